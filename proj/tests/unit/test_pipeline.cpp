#include <gtest/gtest.h>

#include <filesystem>

#include "ddoslab/error.hpp"
#include "ddoslab/nn/serialize.hpp"
#include "ddoslab/pipeline/pipeline.hpp"
#include "ddoslab/preprocess/artifacts.hpp"
#include "ddoslab/telemetry/csv_export.hpp"

using namespace ddoslab;
using namespace ddoslab::pipeline;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ddoslab_pipeline_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// n scalar records with one label.
fs::path write_run(const fs::path& dir, const std::string& name, std::size_t n, int label) {
  std::vector<telemetry::StatRecord> recs(n);
  for (std::size_t i = 0; i < n; ++i) {
    recs[i].type = "scalar";
    recs[i].module = "net.ue[" + std::to_string(i % 7) + "]";
    recs[i].name = "pktSent";
    recs[i].value = static_cast<double>(i);
    recs[i].label = label;
  }
  const fs::path p = dir / name;
  telemetry::export_csv(recs, p);
  return p;
}

PipelineConfig tiny(const fs::path& out) {
  PipelineConfig cfg;
  cfg.scenario.n_ue = 4;
  cfg.scenario.duration_s = 5.0;
  cfg.min_records_per_class = 150;
  cfg.train.epochs = 2;
  cfg.out_dir = out;
  cfg.master_seed = 5;
  return cfg;
}

}  // namespace

TEST(Stages, SeedDerivation) {
  EXPECT_EQ(stage_seed(10, Stage::simulate), 10u);
  EXPECT_EQ(stage_seed(10, Stage::dataset), 11u);
  EXPECT_EQ(stage_seed(10, Stage::preprocess), 12u);
  EXPECT_EQ(stage_seed(10, Stage::train), 13u);
  EXPECT_EQ(stage_seed(10, Stage::eval), 14u);
  const StageError e(Stage::train, "boom");
  EXPECT_EQ(std::string(e.what()), "stage 'train' failed: boom");
}

TEST(Dataset, CountsBothClasses) {
  const fs::path dir = fresh_dir("counts");
  const auto a = write_run(dir, "normal_1.csv", 5000, 0);
  const auto b = write_run(dir, "ddos_1.csv", 5000, 1);
  const auto s = build_dataset({a, b}, dir / "dataset.csv", 1);
  EXPECT_EQ(s.rows, 10000u);
  EXPECT_EQ(s.benign, 5000u);
  EXPECT_EQ(s.attack, 5000u);
  EXPECT_EQ(s.files, 2u);
  EXPECT_FALSE(s.single_class());
}

TEST(Dataset, SingleClassIsReported) {
  const fs::path dir = fresh_dir("single");
  const auto a = write_run(dir, "normal_1.csv", 30, 0);
  EXPECT_TRUE(build_dataset({a}, dir / "dataset.csv", 1).single_class());
}

TEST(Dataset, HeaderMismatchIsSchemaError) {
  const fs::path dir = fresh_dir("mismatch");
  const auto a = write_run(dir, "normal_1.csv", 30, 0);
  prep::write_text_file(dir / "bad.csv", "a,b,label\n1,2,0\n");
  EXPECT_THROW(build_dataset({a, dir / "bad.csv"}, dir / "dataset.csv", 1), SchemaError);
}

TEST(Dataset, BlockShuffleKeepsRunsContiguous) {
  const fs::path dir = fresh_dir("blocks");
  const auto a = write_run(dir, "normal_1.csv", 20, 0);
  const auto b = write_run(dir, "ddos_1.csv", 20, 1);
  build_dataset({a, b}, dir / "dataset.csv", 3);
  const auto t = prep::read_table(dir / "dataset.csv");
  const auto& labels = t.column("label").numeric();
  int switches = 0;
  for (std::size_t i = 1; i < labels.size(); ++i) switches += labels[i] != labels[i - 1];
  EXPECT_EQ(switches, 1);
}

TEST(Config, JsonRoundTripAndValidation) {
  PipelineConfig cfg;
  cfg.scenario.n_ue = 12;
  cfg.min_records_per_class = 77;
  cfg.train.epochs = 3;
  cfg.train.learning_rate = 0.02;
  cfg.models = {models::ArchName::fnn};
  cfg.master_seed = 99;
  cfg.out_dir = "somewhere";
  const PipelineConfig back = pipeline_config_from_json(pipeline_config_to_json(cfg));
  EXPECT_EQ(back.scenario, cfg.scenario);
  EXPECT_EQ(back.min_records_per_class, 77u);
  EXPECT_EQ(back.train.epochs, 3);
  EXPECT_EQ(back.train.learning_rate, 0.02);
  EXPECT_EQ(back.models, cfg.models);
  EXPECT_EQ(back.master_seed, 99u);
  EXPECT_EQ(back.out_dir, cfg.out_dir);
  EXPECT_THROW(pipeline_config_from_json(R"({"models": ["svm"]})"), ConfigError);
  EXPECT_THROW(pipeline_config_from_json(R"({"split": {"train": 0.9, "val": 0.2, "test": 0.2}})").validate(),
               ConfigError);
  EXPECT_THROW(pipeline_config_from_json("[1]"), ConfigError);
}

TEST(Config, DeskDefaults) {
  const PipelineConfig cfg;
  EXPECT_EQ(cfg.scenario.n_ue, 20u);
  EXPECT_EQ(cfg.scenario.n_hosts, 3u);
  EXPECT_EQ(cfg.scenario.duration_s, 60.0);
  EXPECT_EQ(cfg.train.epochs, 10);
  EXPECT_EQ(cfg.train.learning_rate, 1e-3);
  EXPECT_EQ(cfg.min_records_per_class, 5000u);
}

TEST(Pipeline, RerunIsByteIdentical) {
  const auto a = run_pipeline(tiny(fresh_dir("rerun_a")), nullptr);
  const auto b = run_pipeline(tiny(fresh_dir("rerun_b")), nullptr);
  EXPECT_EQ(a.results, b.results);
  EXPECT_EQ(a.histories, b.histories);
  const fs::path tmp = fs::temp_directory_path();
  EXPECT_EQ(prep::read_text_file(tmp / "ddoslab_pipeline_rerun_a" / "metrics.json"),
            prep::read_text_file(tmp / "ddoslab_pipeline_rerun_b" / "metrics.json"));
  EXPECT_GE(a.dataset.benign, 150u);
  EXPECT_GE(a.dataset.attack, 150u);
  ASSERT_EQ(a.results.size(), 2u);
  EXPECT_EQ(a.results[0].model, "CNN");
  EXPECT_EQ(a.results[1].model, "FNN");
}

TEST(Pipeline, EqualsChainedStages) {
  const fs::path out = fresh_dir("chain");
  const PipelineConfig cfg = tiny(out / "whole");
  const auto whole = run_pipeline(cfg, nullptr);

  // the same stages, each reading the previous stage's files
  const fs::path dir = out / "parts";
  std::vector<fs::path> files;
  PipelineConfig parts = cfg;
  parts.out_dir = dir;
  for (const auto& s : simulate_corpus(parts, dir / "runs", nullptr)) files.push_back(s.csv);
  build_dataset(files, dir / "dataset.csv", stage_seed(cfg.master_seed, Stage::dataset));
  prep::SplitSpec split = cfg.split;
  split.seed = stage_seed(cfg.master_seed, Stage::preprocess);
  preprocess_dataset(dir / "dataset.csv", dir / "preprocessed", split);
  const auto train = prep::read_matrix_csv(dir / "preprocessed" / "train.csv");
  const auto val = prep::read_matrix_csv(dir / "preprocessed" / "val.csv");
  const auto test = prep::read_matrix_csv(dir / "preprocessed" / "test.csv");
  nn::TrainConfig tc = cfg.train;
  tc.seed = stage_seed(cfg.master_seed, Stage::train);
  std::vector<eval::ModelResult> results;
  for (auto arch : cfg.models) {
    train_model(arch, train, val, tc, dir / "models", nullptr);
    const std::string lower = arch == models::ArchName::cnn ? "cnn" : "fnn";
    const auto model = nn::load_model(dir / "models" / ("model_" + lower + ".json"));
    results.push_back(evaluate_model(models::to_string(arch), model, test, tc.threshold));
  }
  EXPECT_EQ(results, whole.results);
  EXPECT_EQ(prep::read_text_file(dir / "dataset.csv"), prep::read_text_file(out / "whole" / "dataset.csv"));
}

TEST(Pipeline, WritesEveryArtifact) {
  const fs::path out = fresh_dir("artifacts");
  run_pipeline(tiny(out), nullptr);
  for (const char* f : {"dataset.csv", "preprocessed/train.csv", "preprocessed/val.csv", "preprocessed/test.csv",
                        "preprocessed/scaler.json", "preprocessed/codebooks.json", "models/model_cnn.json",
                        "models/model_fnn.json", "models/history_cnn.csv", "models/history_fnn.csv", "metrics.json",
                        "report.txt"})
    EXPECT_TRUE(fs::exists(out / f)) << f;
  EXPECT_TRUE(fs::exists(out / "runs" / "normal_5.csv"));
  EXPECT_TRUE(fs::exists(out / "runs" / "ddos_5.csv"));
}

TEST(Pipeline, MissingInputSurfacesStageError) {
  EXPECT_THROW(preprocess_dataset("/nonexistent/dataset.csv", fresh_dir("missing"), prep::SplitSpec{}), Error);
}
