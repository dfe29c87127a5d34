#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ddoslab::telemetry {

/// The 16 feature columns of the result schema, in file order.
inline constexpr std::array<std::string_view, 16> kFeatureColumns = {
    "sumweights", "type", "module", "name",       "attrname",  "attrvalue", "value",     "count",
    "mean",       "stddev", "min",  "max",        "underflows", "overflows", "binedges", "binvalues"};

inline constexpr std::string_view kLabelColumn = "label";

inline constexpr int kBenign = 0;
inline constexpr int kAttack = 1;

/// One scalar or histogram result row plus its class label. Scalar rows
/// carry `value` and no histogram fields; histogram rows carry every
/// histogram field and no `value`.
struct StatRecord {
  std::optional<double> sumweights;
  std::string type;  // "scalar" | "histogram"
  std::string module;
  std::string name;
  std::optional<std::string> attrname;
  std::optional<std::string> attrvalue;
  std::optional<double> value;
  std::optional<std::int64_t> count;
  std::optional<double> mean;
  std::optional<double> stddev;
  std::optional<double> min;
  std::optional<double> max;
  std::optional<std::int64_t> underflows;
  std::optional<std::int64_t> overflows;
  std::optional<std::string> binedges;   // space-separated reals
  std::optional<std::string> binvalues;  // space-separated integers
  int label = kBenign;

  bool is_scalar() const noexcept { return type == "scalar"; }
  bool is_histogram() const noexcept { return type == "histogram"; }

  friend bool operator==(const StatRecord&, const StatRecord&) = default;
};

/// Empty string when `r` satisfies the field-presence and histogram
/// consistency rules, otherwise a description of the first violation.
std::string check_record(const StatRecord& r);

}  // namespace ddoslab::telemetry
