// ddoslab: simulate -> dataset -> preprocess -> train -> eval, as subcommands
// or all at once with `pipeline`.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ddoslab/nn/serialize.hpp"
#include "ddoslab/pipeline/pipeline.hpp"
#include "ddoslab/preprocess/artifacts.hpp"

namespace fs = std::filesystem;
using namespace ddoslab;
using pipeline::Stage;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;

struct Globals {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
};

struct ScenarioFlags {
  std::optional<std::uint32_t> ue, hosts;
  std::optional<double> duration;
  std::optional<std::string> scenario;
};

struct TrainFlags {
  std::optional<int> epochs;
  std::optional<double> lr;
  std::optional<std::size_t> batch;
  std::optional<std::string> model;
};

void add_scenario_flags(CLI::App* cmd, ScenarioFlags& f) {
  cmd->add_option("--ue", f.ue, "Number of UEs")->check(CLI::Range(2u, 100000u));
  cmd->add_option("--hosts", f.hosts, "Number of flooding hosts")->check(CLI::Range(1u, 1000u));
  cmd->add_option("--duration", f.duration, "Simulated seconds per run")->check(CLI::PositiveNumber);
}

void add_train_flags(CLI::App* cmd, TrainFlags& f) {
  cmd->add_option("--model", f.model, "cnn, fnn or both")->check(CLI::IsMember({"cnn", "fnn", "both"}, CLI::ignore_case));
  cmd->add_option("--epochs", f.epochs, "Training epochs")->check(CLI::Range(1, 100000));
  cmd->add_option("--lr", f.lr, "Adam learning rate")->check(CLI::PositiveNumber);
  cmd->add_option("--batch-size", f.batch, "Minibatch size")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 24));
}

pipeline::PipelineConfig resolve(const Globals& g, const ScenarioFlags& s, const TrainFlags& t) {
  pipeline::PipelineConfig cfg;
  if (g.config) cfg = pipeline::pipeline_config_from_json(prep::read_text_file(*g.config), cfg);
  if (g.seed) cfg.master_seed = *g.seed;
  if (g.out) cfg.out_dir = *g.out;
  if (s.ue) cfg.scenario.n_ue = *s.ue;
  if (s.hosts) cfg.scenario.n_hosts = *s.hosts;
  if (s.duration) cfg.scenario.duration_s = *s.duration;
  if (t.epochs) cfg.train.epochs = *t.epochs;
  if (t.lr) cfg.train.learning_rate = *t.lr;
  if (t.batch) cfg.train.batch_size = *t.batch;
  if (t.model && *t.model != "both") cfg.models = {models::arch_from_string(*t.model)};
  cfg.validate();
  return cfg;
}

std::vector<sim::Scenario> scenarios_of(const std::optional<std::string>& s) {
  if (!s || *s == "both") return {sim::Scenario::normal, sim::Scenario::ddos};
  return {sim::scenario_from_string(*s)};
}

int cmd_simulate(const pipeline::PipelineConfig& cfg, const ScenarioFlags& s, std::size_t runs, bool trace) {
  const fs::path dir = cfg.out_dir / "runs";
  const auto base = pipeline::stage_seed(cfg.master_seed, Stage::simulate);
  for (auto scenario : scenarios_of(s.scenario)) {
    for (std::size_t r = 0; r < runs; ++r) {
      sim::ScenarioConfig sc = cfg.scenario;
      sc.scenario = scenario;
      sc.seed = base + r;
      const fs::path trace_path =
          dir / (std::string(sim::to_string(scenario)) + "_" + std::to_string(sc.seed) + ".ndjson");
      const auto summary = pipeline::simulate_run(sc, dir, trace ? &trace_path : nullptr);
      std::cout << pipeline::format_summary(summary) << '\n';
    }
  }
  return kExitOk;
}

int cmd_dataset(const pipeline::PipelineConfig& cfg, std::vector<std::string> inputs, std::optional<std::string> output) {
  if (inputs.empty()) {
    const fs::path dir = cfg.out_dir / "runs";
    if (fs::is_directory(dir))
      for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".csv") inputs.push_back(e.path().string());
    std::sort(inputs.begin(), inputs.end());
  }
  if (inputs.empty()) throw pipeline::StageError(Stage::dataset, "no input CSV files");
  std::vector<fs::path> paths(inputs.begin(), inputs.end());
  const fs::path out = output ? fs::path(*output) : cfg.out_dir / "dataset.csv";
  const auto s = pipeline::build_dataset(paths, out, pipeline::stage_seed(cfg.master_seed, Stage::dataset));
  std::cout << "dataset: " << s.rows << " rows from " << s.files << " files (benign " << s.benign << ", attack "
            << s.attack << ") -> " << out.string() << '\n';
  if (s.single_class()) std::cerr << "warning: dataset holds a single class\n";
  return kExitOk;
}

int cmd_preprocess(const pipeline::PipelineConfig& cfg, std::optional<std::string> input) {
  prep::SplitSpec split = cfg.split;
  split.seed = pipeline::stage_seed(cfg.master_seed, Stage::preprocess);
  const fs::path in = input ? fs::path(*input) : cfg.out_dir / "dataset.csv";
  const fs::path dir = cfg.out_dir / "preprocessed";
  const auto p = pipeline::preprocess_dataset(in, dir, split);
  std::cout << "preprocess: train/val/test = " << p.split.train.n_rows << "/" << p.split.val.n_rows << "/"
            << p.split.test.n_rows << ", " << p.split.train.n_features() << " features -> " << dir.string() << '\n';
  return kExitOk;
}

int cmd_train(const pipeline::PipelineConfig& cfg) {
  const fs::path data = cfg.out_dir / "preprocessed";
  const auto train = prep::read_matrix_csv(data / "train.csv");
  const auto val = prep::read_matrix_csv(data / "val.csv");
  nn::TrainConfig tc = cfg.train;
  tc.seed = pipeline::stage_seed(cfg.master_seed, Stage::train);
  for (auto arch : cfg.models) {
    std::cout << "[train] " << models::to_string(arch) << '\n';
    pipeline::train_model(arch, train, val, tc, cfg.out_dir / "models", &std::cout);
  }
  return kExitOk;
}

int cmd_eval(const pipeline::PipelineConfig& cfg) {
  const auto test = prep::read_matrix_csv(cfg.out_dir / "preprocessed" / "test.csv");
  std::vector<eval::ModelResult> results;
  for (auto arch : cfg.models) {
    const std::string lower = arch == models::ArchName::cnn ? "cnn" : "fnn";
    const auto model = nn::load_model(cfg.out_dir / "models" / ("model_" + lower + ".json"));
    results.push_back(pipeline::evaluate_model(models::to_string(arch), model, test, cfg.train.threshold));
  }
  std::cout << pipeline::write_report(results, cfg.out_dir);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ddoslab: 5G/IoT DDoS simulation and detection pipeline"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config, "Pipeline config JSON")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Master seed (stage seed = master + stage index)");
  app.add_option("--out", g.out, "Output directory");

  ScenarioFlags sflags;
  TrainFlags tflags;

  auto* sim_cmd = app.add_subcommand("simulate", "Run scenarios and write <scenario>_<seed>.csv result files");
  add_scenario_flags(sim_cmd, sflags);
  sim_cmd->add_option("--scenario", sflags.scenario, "normal, ddos or both")
      ->check(CLI::IsMember({"normal", "ddos", "both"}, CLI::ignore_case));
  std::size_t runs = 1;
  bool trace = false;
  sim_cmd->add_option("--runs", runs, "Runs per scenario, seeds seed..seed+runs-1")->check(CLI::Range(1, 100000));
  sim_cmd->add_flag("--trace", trace, "Also write the per-packet NDJSON trace");

  auto* ds_cmd = app.add_subcommand("dataset", "Merge result files into dataset.csv");
  std::vector<std::string> inputs;
  std::optional<std::string> ds_out;
  ds_cmd->add_option("inputs", inputs, "Result CSVs (default: every CSV in <out>/runs)")->check(CLI::ExistingFile);
  ds_cmd->add_option("-o,--output", ds_out, "Output CSV (default <out>/dataset.csv)");

  auto* pp_cmd = app.add_subcommand("preprocess", "Drop, fill, encode, split and scale the dataset");
  std::optional<std::string> pp_in;
  pp_cmd->add_option("-i,--input", pp_in, "Dataset CSV (default <out>/dataset.csv)")->check(CLI::ExistingFile);

  auto* tr_cmd = app.add_subcommand("train", "Train models on <out>/preprocessed");
  add_train_flags(tr_cmd, tflags);

  auto* ev_cmd = app.add_subcommand("eval", "Evaluate trained models on the test split");
  ev_cmd->add_option("--model", tflags.model, "cnn, fnn or both")->check(CLI::IsMember({"cnn", "fnn", "both"}, CLI::ignore_case));

  auto* pl_cmd = app.add_subcommand("pipeline", "Run every stage end to end");
  add_scenario_flags(pl_cmd, sflags);
  add_train_flags(pl_cmd, tflags);
  std::optional<std::size_t> min_records;
  pl_cmd->add_option("--min-records", min_records, "Minimum records per class")->check(CLI::Range(1, 100000000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }
  if (sflags.scenario) {
    for (auto& c : *sflags.scenario) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (tflags.model) {
    for (auto& c : *tflags.model) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }

  pipeline::PipelineConfig cfg;
  try {
    cfg = resolve(g, sflags, tflags);
    if (min_records) cfg.min_records_per_class = *min_records;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*sim_cmd) return cmd_simulate(cfg, sflags, runs, trace);
    if (*ds_cmd) return cmd_dataset(cfg, inputs, ds_out);
    if (*pp_cmd) return cmd_preprocess(cfg, pp_in);
    if (*tr_cmd) return cmd_train(cfg);
    if (*ev_cmd) return cmd_eval(cfg);
    if (*pl_cmd) {
      pipeline::run_pipeline(cfg, &std::cout);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
