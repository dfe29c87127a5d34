#include "ddoslab/eval/metrics.hpp"

#include <cstdio>
#include <json.hpp>
#include <stdexcept>

#include "ddoslab/error.hpp"

namespace ddoslab::eval {

using nlohmann::json;

namespace {

double ratio(std::uint64_t num, std::uint64_t den, const char* name, std::vector<std::string>& undefined) {
  if (den == 0) {
    undefined.emplace_back(name);
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", v * 100.0);
  return buf;
}

}  // namespace

ConfusionMatrix confusion(std::span<const int> labels, std::span<const int> preds) {
  if (labels.size() != preds.size())
    throw std::invalid_argument("confusion: " + std::to_string(labels.size()) + " labels vs " +
                                std::to_string(preds.size()) + " predictions");
  if (labels.empty()) throw std::invalid_argument("confusion: empty input");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int y = labels[i], p = preds[i];
    if ((y != 0 && y != 1) || (p != 0 && p != 1)) throw std::invalid_argument("confusion: values must be 0 or 1");
    if (y == 1) {
      ++(p == 1 ? cm.tp : cm.fn);
    } else {
      ++(p == 1 ? cm.fp : cm.tn);
    }
  }
  return cm;
}

MetricsReport metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw std::invalid_argument("metrics: empty confusion matrix");
  MetricsReport r;
  r.cm = cm;
  r.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
  r.precision = ratio(cm.tp, cm.tp + cm.fp, "precision", r.undefined);
  r.recall = ratio(cm.tp, cm.tp + cm.fn, "recall", r.undefined);
  r.false_alarm_rate = ratio(cm.fp, cm.fp + cm.tn, "false_alarm_rate", r.undefined);
  if (r.precision + r.recall > 0.0) {
    r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  } else {
    r.undefined.emplace_back("f1");
  }
  return r;
}

std::string report_row(const ModelResult& r) {
  return r.model + " " + percent(r.metrics.accuracy) + " " + percent(r.metrics.precision) + " " +
         percent(r.metrics.recall) + " " + percent(r.metrics.f1);
}

std::string report_table(std::span<const ModelResult> results) {
  std::string out = "Model Accuracy Precision Recall F1 Score\n";
  for (const auto& r : results) out += report_row(r) + "\n";
  return out;
}

std::string report_json(std::span<const ModelResult> results) {
  json models = json::array();
  for (const auto& r : results) {
    const auto& m = r.metrics;
    models.push_back({{"model", r.model},
                      {"accuracy", m.accuracy},
                      {"precision", m.precision},
                      {"recall", m.recall},
                      {"f1", m.f1},
                      {"false_alarm_rate", m.false_alarm_rate},
                      {"confusion", {{"tp", m.cm.tp}, {"tn", m.cm.tn}, {"fp", m.cm.fp}, {"fn", m.cm.fn}}},
                      {"undefined", m.undefined}});
  }
  return json{{"models", models}}.dump(2);
}

std::vector<ModelResult> report_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    std::vector<ModelResult> out;
    for (const auto& j : doc.at("models")) {
      ModelResult r;
      r.model = j.at("model").get<std::string>();
      auto& m = r.metrics;
      m.accuracy = j.at("accuracy").get<double>();
      m.precision = j.at("precision").get<double>();
      m.recall = j.at("recall").get<double>();
      m.f1 = j.at("f1").get<double>();
      m.false_alarm_rate = j.at("false_alarm_rate").get<double>();
      const auto& c = j.at("confusion");
      m.cm = {c.at("tp").get<std::uint64_t>(), c.at("tn").get<std::uint64_t>(), c.at("fp").get<std::uint64_t>(),
              c.at("fn").get<std::uint64_t>()};
      m.undefined = j.value("undefined", std::vector<std::string>{});
      out.push_back(std::move(r));
    }
    return out;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed metrics JSON: ") + e.what());
  }
}

}  // namespace ddoslab::eval
