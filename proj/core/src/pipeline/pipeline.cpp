#include "ddoslab/pipeline/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <random>
#include <sstream>

#include "ddoslab/nn/serialize.hpp"
#include "ddoslab/preprocess/artifacts.hpp"
#include "ddoslab/telemetry/collector.hpp"
#include "ddoslab/telemetry/csv_export.hpp"
#include "ddoslab/util/csv.hpp"
#include "ddoslab/util/numfmt.hpp"

namespace ddoslab::pipeline {

using nlohmann::json;

namespace {

template <class F>
auto in_stage(Stage stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

std::string format_row(const util::CsvRow& row) {
  std::string line;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) line += ',';
    if (!row[i]) continue;
    if (row[i]->empty()) {
      line += "\"\"";
    } else {
      util::append_csv_field(line, *row[i]);
    }
  }
  return line;
}

std::string lower_arch(models::ArchName a) { return a == models::ArchName::cnn ? "cnn" : "fnn"; }

}  // namespace

const char* to_string(Stage s) noexcept {
  switch (s) {
    case Stage::simulate: return "simulate";
    case Stage::dataset: return "dataset";
    case Stage::preprocess: return "preprocess";
    case Stage::train: return "train";
    case Stage::eval: return "eval";
  }
  return "?";
}

StageError::StageError(Stage stage, const std::string& cause)
    : Error(std::string("stage '") + to_string(stage) + "' failed: " + cause), stage_(stage) {}

// ------------------------------------------------------------------ config

sim::ScenarioConfig PipelineConfig::desk_scenario() {
  sim::ScenarioConfig c;
  c.n_ue = 20;
  c.n_hosts = 3;
  c.duration_s = 60.0;
  return c;
}

void PipelineConfig::validate() const {
  sim::validate(scenario);
  if (min_records_per_class == 0) throw ConfigError("min_records_per_class must be >= 1");
  if (max_runs_per_class == 0) throw ConfigError("max_runs_per_class must be >= 1");
  try {
    prep::split_sizes(10, split);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  train.validate();
  if (models.empty()) throw ConfigError("no model selected");
}

PipelineConfig pipeline_config_from_json(const std::string& text, PipelineConfig base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed pipeline config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("pipeline config must be a JSON object");
  try {
    if (j.contains("scenario")) base.scenario = sim::scenario_from_json(j["scenario"].dump(), base.scenario);
    base.min_records_per_class = j.value("min_records_per_class", base.min_records_per_class);
    base.max_runs_per_class = j.value("max_runs_per_class", base.max_runs_per_class);
    if (j.contains("split")) {
      const auto& s = j["split"];
      base.split.train_frac = s.value("train", base.split.train_frac);
      base.split.val_frac = s.value("val", base.split.val_frac);
      base.split.test_frac = s.value("test", base.split.test_frac);
    }
    if (j.contains("train")) {
      const auto& t = j["train"];
      base.train.epochs = t.value("epochs", base.train.epochs);
      base.train.learning_rate = t.value("learning_rate", base.train.learning_rate);
      base.train.batch_size = t.value("batch_size", base.train.batch_size);
      base.train.beta1 = t.value("beta1", base.train.beta1);
      base.train.beta2 = t.value("beta2", base.train.beta2);
      base.train.eps = t.value("eps", base.train.eps);
      base.train.threshold = t.value("threshold", base.train.threshold);
    }
    if (j.contains("models")) {
      base.models.clear();
      for (const auto& m : j["models"]) base.models.push_back(models::arch_from_string(m.get<std::string>()));
    }
    base.master_seed = j.value("seed", base.master_seed);
    if (j.contains("out")) base.out_dir = j["out"].get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid pipeline config: ") + e.what());
  }
  return base;
}

std::string pipeline_config_to_json(const PipelineConfig& c) {
  json models = json::array();
  for (auto m : c.models) models.push_back(lower_arch(m));
  json j = {{"scenario", json::parse(sim::scenario_to_json(c.scenario))},
            {"min_records_per_class", c.min_records_per_class},
            {"max_runs_per_class", c.max_runs_per_class},
            {"split", {{"train", c.split.train_frac}, {"val", c.split.val_frac}, {"test", c.split.test_frac}}},
            {"train",
             {{"epochs", c.train.epochs},
              {"learning_rate", c.train.learning_rate},
              {"batch_size", c.train.batch_size},
              {"beta1", c.train.beta1},
              {"beta2", c.train.beta2},
              {"eps", c.train.eps},
              {"threshold", c.train.threshold}}},
            {"models", models},
            {"seed", c.master_seed},
            {"out", c.out_dir.string()}};
  return j.dump(2);
}

// ---------------------------------------------------------------- simulate

SimulateSummary simulate_run(const sim::ScenarioConfig& config, const fs::path& dir, const fs::path* trace_path) {
  const telemetry::RunResult run = telemetry::simulate_and_collect(config);
  fs::create_directories(dir);

  SimulateSummary s;
  s.scenario = config.scenario;
  s.seed = config.seed;
  const auto totals = run.trace.totals();
  s.sent = totals.sent;
  s.delivered = totals.delivered;
  s.dropped = totals.dropped;
  s.in_flight = totals.in_flight;
  s.mean_ping_rtt = run.trace.mean_ping_rtt();
  s.ping_delivery_ratio = run.trace.ping_delivery_ratio();
  s.events = run.trace.events_processed;
  s.records = run.records.size();
  s.trace_sha256 = sim::trace_digest(run.trace);
  s.csv = dir / telemetry::run_file_name(config.scenario, config.seed);
  telemetry::export_csv(run.records, s.csv);

  if (trace_path) {
    std::ofstream out(*trace_path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(trace_path->string(), "cannot open for writing");
    sim::write_ndjson(run.trace, out);
    if (!out) throw IoError(trace_path->string(), "write failed");
  }
  return s;
}

std::string format_summary(const SimulateSummary& s) {
  std::ostringstream o;
  o << sim::to_string(s.scenario) << " seed=" << s.seed << " sent=" << s.sent << " delivered=" << s.delivered
    << " dropped=" << s.dropped << " in_flight=" << s.in_flight
    << " mean_ping_rtt_s=" << util::format_real(s.mean_ping_rtt)
    << " ping_delivery=" << util::format_real(s.ping_delivery_ratio) << " records=" << s.records
    << " -> " << s.csv.string();
  return o.str();
}

std::vector<SimulateSummary> simulate_corpus(const PipelineConfig& cfg, const fs::path& dir, std::ostream* log) {
  std::vector<SimulateSummary> out;
  const std::uint64_t base_seed = stage_seed(cfg.master_seed, Stage::simulate);
  for (sim::Scenario scenario : {sim::Scenario::normal, sim::Scenario::ddos}) {
    std::size_t records = 0;
    for (std::size_t r = 0; records < cfg.min_records_per_class; ++r) {
      if (r == cfg.max_runs_per_class)
        throw ConfigError(std::string(sim::to_string(scenario)) + ": " + std::to_string(records) + " records after " +
                          std::to_string(r) + " runs, below min_records_per_class");
      sim::ScenarioConfig sc = cfg.scenario;
      sc.scenario = scenario;
      sc.seed = base_seed + r;
      out.push_back(simulate_run(sc, dir));
      records += out.back().records;
      if (log) *log << "  " << format_summary(out.back()) << '\n';
    }
  }
  return out;
}

// ----------------------------------------------------------------- dataset

DatasetSummary build_dataset(const std::vector<fs::path>& inputs, const fs::path& out, std::uint64_t seed) {
  if (inputs.empty()) throw std::invalid_argument("dataset needs at least one input file");

  struct Block {
    std::vector<std::string> lines;
    std::size_t benign = 0, attack = 0;
  };
  std::vector<Block> blocks;
  std::optional<util::CsvRow> header;
  std::size_t label_col = 0;

  for (const auto& path : inputs) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string(), "cannot open for reading");
    util::CsvReader reader(in);
    util::CsvRow row;
    if (!reader.next(row)) throw SchemaError(path.string() + ": empty file, no header");
    if (!header) {
      header = row;
      auto it = std::find(row.begin(), row.end(), util::CsvField(std::string(telemetry::kLabelColumn)));
      if (it == row.end()) throw SchemaError(path.string() + ": no label column");
      label_col = static_cast<std::size_t>(it - row.begin());
    } else if (row != *header) {
      throw SchemaError(path.string() + ": header does not match " + inputs.front().string());
    }

    Block b;
    while (reader.next(row)) {
      if (row.size() == 1 && !row[0]) continue;
      if (row.size() != header->size())
        throw SchemaError(path.string() + ":" + std::to_string(reader.line()) + ": wrong number of fields");
      const auto& label = row[label_col];
      if (label == "0") {
        ++b.benign;
      } else if (label == "1") {
        ++b.attack;
      } else {
        throw SchemaError(path.string() + ":" + std::to_string(reader.line()) + ": label must be 0 or 1");
      }
      b.lines.push_back(format_row(row));
    }
    blocks.push_back(std::move(b));
  }

  std::mt19937_64 rng(seed);
  std::shuffle(blocks.begin(), blocks.end(), rng);

  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  std::ofstream os(out, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError(out.string(), "cannot open for writing");
  os << format_row(*header) << '\n';
  DatasetSummary s;
  s.files = inputs.size();
  for (const Block& b : blocks) {
    for (const auto& l : b.lines) os << l << '\n';
    s.benign += b.benign;
    s.attack += b.attack;
  }
  s.rows = s.benign + s.attack;
  os.flush();
  if (!os) throw IoError(out.string(), "write failed");
  return s;
}

// -------------------------------------------------------------- preprocess

prep::Preprocessed preprocess_dataset(const fs::path& dataset_csv, const fs::path& dir, const prep::SplitSpec& split) {
  prep::Preprocessed p = prep::preprocess(prep::read_table(dataset_csv), split);
  prep::write_preprocessed(p, dir);
  return p;
}

nn::Examples to_examples(const prep::DatasetMatrix& m) {
  nn::Examples e{nn::Tensor({m.n_rows, m.n_features()}, m.features), {}};
  e.y.assign(m.labels.begin(), m.labels.end());
  return e;
}

// ------------------------------------------------------------------- train

TrainedModel train_model(models::ArchName arch, const prep::DatasetMatrix& train, const prep::DatasetMatrix& val,
                         const nn::TrainConfig& cfg, const fs::path& dir, std::ostream* log) {
  TrainedModel t{arch, models::build(arch, train.n_features(), cfg.seed), {}};
  auto on_epoch = [&](const nn::EpochStats& s) {
    if (!log) return;
    *log << "  " << models::to_string(arch) << " epoch " << s.epoch << "/" << cfg.epochs
         << " train_loss=" << util::format_real(s.train_loss) << " val_loss=" << util::format_real(s.val_loss)
         << " val_acc=" << util::format_real(s.val_accuracy) << '\n';
  };
  t.history = nn::train(t.model, to_examples(train), to_examples(val), cfg, on_epoch);
  fs::create_directories(dir);
  nn::save_model(t.model, dir / ("model_" + lower_arch(arch) + ".json"));
  prep::write_text_file(dir / ("history_" + lower_arch(arch) + ".csv"), nn::history_to_csv(t.history));
  return t;
}

// -------------------------------------------------------------------- eval

eval::ModelResult evaluate_model(const std::string& name, const nn::Model& model, const prep::DatasetMatrix& test,
                                 double threshold) {
  const auto examples = to_examples(test);
  const auto preds = nn::classify(nn::predict(model, examples.x), threshold);
  return {name, eval::metrics(eval::confusion(test.labels, preds))};
}

std::string write_report(const std::vector<eval::ModelResult>& results, const fs::path& dir) {
  fs::create_directories(dir);
  prep::write_text_file(dir / "metrics.json", eval::report_json(results) + "\n");
  std::string table = eval::report_table(results);
  prep::write_text_file(dir / "report.txt", table);
  return table;
}

// ---------------------------------------------------------------- pipeline

PipelineResult run_pipeline(const PipelineConfig& cfg, std::ostream* log) {
  cfg.validate();
  const fs::path out = cfg.out_dir;
  PipelineResult r;

  if (log) *log << "[simulate] " << cfg.scenario.n_ue << " UEs, " << cfg.scenario.n_hosts << " hosts, "
                << cfg.scenario.duration_s << " s per run\n";
  r.runs = in_stage(Stage::simulate, [&] { return simulate_corpus(cfg, out / "runs", log); });

  std::vector<fs::path> files;
  for (const auto& s : r.runs) files.push_back(s.csv);
  r.dataset = in_stage(Stage::dataset, [&] {
    return build_dataset(files, out / "dataset.csv", stage_seed(cfg.master_seed, Stage::dataset));
  });
  if (log) {
    *log << "[dataset] " << r.dataset.rows << " rows: " << r.dataset.benign << " benign, " << r.dataset.attack
         << " attack\n";
    if (r.dataset.single_class()) *log << "warning: dataset holds a single class\n";
  }

  prep::SplitSpec split = cfg.split;
  split.seed = stage_seed(cfg.master_seed, Stage::preprocess);
  const prep::Preprocessed data =
      in_stage(Stage::preprocess, [&] { return preprocess_dataset(out / "dataset.csv", out / "preprocessed", split); });
  r.split = {data.split.train.n_rows, data.split.val.n_rows, data.split.test.n_rows};
  if (log) *log << "[preprocess] train/val/test = " << r.split.train << "/" << r.split.val << "/" << r.split.test
                << ", " << data.split.train.n_features() << " features\n";

  nn::TrainConfig tc = cfg.train;
  tc.seed = stage_seed(cfg.master_seed, Stage::train);
  std::vector<TrainedModel> trained;
  for (auto arch : cfg.models) {
    if (log) *log << "[train] " << models::to_string(arch) << '\n';
    trained.push_back(
        in_stage(Stage::train, [&] { return train_model(arch, data.split.train, data.split.val, tc, out / "models", log); }));
    r.histories.push_back(trained.back().history);
  }

  in_stage(Stage::eval, [&] {
    for (const auto& t : trained)
      r.results.push_back(evaluate_model(models::to_string(t.arch), t.model, data.split.test, tc.threshold));
    r.report = write_report(r.results, out);
    return 0;
  });
  if (log) *log << "[eval]\n" << r.report;
  return r;
}

}  // namespace ddoslab::pipeline
