#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ddoslab/error.hpp"
#include "ddoslab/eval/metrics.hpp"
#include "ddoslab/models/architectures.hpp"
#include "ddoslab/nn/train.hpp"
#include "ddoslab/preprocess/transforms.hpp"
#include "ddoslab/simcore/config.hpp"

namespace ddoslab::pipeline {

namespace fs = std::filesystem;

/// Stages in run order. A stage's seed is master seed + its index, so any
/// stage can be rerun on its own and reproduce the pipeline's output.
enum class Stage { simulate = 0, dataset = 1, preprocess = 2, train = 3, eval = 4 };

const char* to_string(Stage s) noexcept;
constexpr std::uint64_t stage_seed(std::uint64_t master, Stage s) noexcept {
  return master + static_cast<std::uint64_t>(s);
}

/// A stage failed; what() names the stage and the cause.
class StageError : public Error {
 public:
  StageError(Stage stage, const std::string& cause);
  Stage stage() const noexcept { return stage_; }

 private:
  Stage stage_;
};

struct PipelineConfig {
  sim::ScenarioConfig scenario = desk_scenario();
  /// Runs per class are added (seed, seed + 1, ...) until each class has
  /// at least this many records.
  std::size_t min_records_per_class = 5000;
  std::size_t max_runs_per_class = 500;
  prep::SplitSpec split;  // seed is replaced by the preprocess stage seed
  nn::TrainConfig train;  // seed is replaced by the train stage seed
  std::vector<models::ArchName> models = {models::ArchName::cnn, models::ArchName::fnn};
  fs::path out_dir = "out";
  std::uint64_t master_seed = 1;

  /// 20 UEs, 3 hosts, 60 s.
  static sim::ScenarioConfig desk_scenario();
  /// Throws ConfigError.
  void validate() const;
};

/// Keys: scenario (see scenario_from_json), min_records_per_class,
/// max_runs_per_class, split {train, val, test}, train {epochs,
/// learning_rate, batch_size, beta1, beta2, eps, threshold}, models
/// ["cnn", "fnn"], seed, out. Missing keys keep `base`.
PipelineConfig pipeline_config_from_json(const std::string& text, PipelineConfig base = {});
std::string pipeline_config_to_json(const PipelineConfig& cfg);

// ------------------------------------------------------------------ stages

struct SimulateSummary {
  sim::Scenario scenario = sim::Scenario::normal;
  std::uint64_t seed = 0;
  std::uint64_t sent = 0, delivered = 0, dropped = 0, in_flight = 0;
  double mean_ping_rtt = 0.0;
  double ping_delivery_ratio = 0.0;
  std::uint64_t events = 0;
  std::size_t records = 0;
  std::string trace_sha256;
  fs::path csv;
};

/// Simulates one run and writes `<scenario>_<seed>.csv` into `dir`.
/// With `trace_path`, also writes the per-packet NDJSON trace.
SimulateSummary simulate_run(const sim::ScenarioConfig& config, const fs::path& dir,
                             const fs::path* trace_path = nullptr);

std::string format_summary(const SimulateSummary& s);

/// Both scenarios, successive seeds from the simulate stage seed, until
/// each class reaches cfg.min_records_per_class.
std::vector<SimulateSummary> simulate_corpus(const PipelineConfig& cfg, const fs::path& dir, std::ostream* log);

struct DatasetSummary {
  std::size_t rows = 0;
  std::size_t benign = 0;
  std::size_t attack = 0;
  std::size_t files = 0;
  bool single_class() const noexcept { return benign == 0 || attack == 0; }
};

/// Concatenates result CSVs with identical headers into `out`. Whole
/// files are shuffled as blocks by `seed`, keeping each run's records
/// contiguous. Throws SchemaError on a header mismatch.
DatasetSummary build_dataset(const std::vector<fs::path>& inputs, const fs::path& out, std::uint64_t seed);

/// Reads the dataset, runs drop/fill/encode/split/scale and writes the
/// artifacts into `dir`.
prep::Preprocessed preprocess_dataset(const fs::path& dataset_csv, const fs::path& dir, const prep::SplitSpec& split);

nn::Examples to_examples(const prep::DatasetMatrix& m);

struct TrainedModel {
  models::ArchName arch;
  nn::Model model;
  nn::History history;
};

/// Builds the architecture with cfg.seed, trains it and writes
/// `model_<arch>.json` and `history_<arch>.csv` into `dir`.
TrainedModel train_model(models::ArchName arch, const prep::DatasetMatrix& train, const prep::DatasetMatrix& val,
                         const nn::TrainConfig& cfg, const fs::path& dir, std::ostream* log);

eval::ModelResult evaluate_model(const std::string& name, const nn::Model& model, const prep::DatasetMatrix& test,
                                 double threshold);

/// Writes metrics.json and report.txt into `dir`; returns the table text.
std::string write_report(const std::vector<eval::ModelResult>& results, const fs::path& dir);

struct PipelineResult {
  std::vector<SimulateSummary> runs;
  DatasetSummary dataset;
  prep::SplitSizes split{0, 0, 0};
  std::vector<nn::History> histories;
  std::vector<eval::ModelResult> results;
  std::string report;
};

/// simulate -> dataset -> preprocess -> train -> eval, persisting every
/// artifact under cfg.out_dir. Stage failures surface as StageError.
PipelineResult run_pipeline(const PipelineConfig& cfg, std::ostream* log);

}  // namespace ddoslab::pipeline
