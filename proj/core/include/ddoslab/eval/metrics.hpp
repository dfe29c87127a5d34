#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ddoslab::eval {

/// Positive class is 1 (attack).
struct ConfusionMatrix {
  std::uint64_t tp = 0, tn = 0, fp = 0, fn = 0;

  std::uint64_t total() const noexcept { return tp + tn + fp + fn; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

/// Throws std::invalid_argument on empty or unequal-length input, or
/// values other than 0/1.
ConfusionMatrix confusion(std::span<const int> labels, std::span<const int> preds);

struct MetricsReport {
  double accuracy = 0.0;          // (TP+TN) / total
  double precision = 0.0;         // TP / (TP+FP)
  double recall = 0.0;            // TP / (TP+FN), the detection rate
  double f1 = 0.0;                // 2PR / (P+R)
  double false_alarm_rate = 0.0;  // FP / (FP+TN)
  ConfusionMatrix cm;
  /// Names of metrics whose denominator was zero; those report 0.
  std::vector<std::string> undefined;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

/// Throws std::invalid_argument when cm is empty.
MetricsReport metrics(const ConfusionMatrix& cm);

struct ModelResult {
  std::string model;
  MetricsReport metrics;

  friend bool operator==(const ModelResult&, const ModelResult&) = default;
};

/// "CNN 99.74% 99.87% 99.61% 99.74%"
std::string report_row(const ModelResult& r);
/// Header line plus one row per result, in order.
std::string report_table(std::span<const ModelResult> results);

std::string report_json(std::span<const ModelResult> results);
/// Throws SchemaError.
std::vector<ModelResult> report_from_json(const std::string& text);

}  // namespace ddoslab::eval
