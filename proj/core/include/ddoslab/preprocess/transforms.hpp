#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ddoslab/preprocess/raw_table.hpp"

namespace ddoslab::prep {

/// The sparse histogram columns removed before training.
inline constexpr std::array<std::string_view, 10> kDroppedColumns = {
    "count", "sumweights", "mean", "stddev", "min", "max", "underflows", "overflows", "binedges", "binvalues"};

/// What is left: type, module, name, attrname, attrvalue, value.
inline constexpr std::array<std::string_view, 6> kKeptFeatures = {"type",     "module",    "name",
                                                                  "attrname", "attrvalue", "value"};

/// Removes the ten sparse columns. Requires every schema column plus label.
RawTable drop_sparse_columns(const RawTable& t);

/// Per column: nulls take the nearest value above; leading nulls take the
/// first non-null value below; all-null columns become 0 or "".
RawTable forward_fill(const RawTable& t);

/// Category -> ordinal code in first-appearance order.
class Codebook {
 public:
  /// Code of `s`, appending it when new.
  int learn(const std::string& s);
  /// Code of `s`, or -1 when unseen.
  int code(const std::string& s) const;
  const std::vector<std::string>& categories() const noexcept { return categories_; }
  std::size_t size() const noexcept { return categories_.size(); }

  friend bool operator==(const Codebook& a, const Codebook& b) { return a.categories_ == b.categories_; }

 private:
  std::vector<std::string> categories_;
  std::unordered_map<std::string, int> index_;
};

using Codebooks = std::map<std::string, Codebook>;

/// Dense row-major feature matrix with integer labels.
struct DatasetMatrix {
  std::size_t n_rows = 0;
  std::vector<std::string> feature_names;
  std::vector<double> features;  // n_rows * n_features()
  std::vector<int> labels;
  Codebooks codebooks;

  std::size_t n_features() const noexcept { return feature_names.size(); }
  double at(std::size_t r, std::size_t c) const { return features[r * n_features() + c]; }
  double& at(std::size_t r, std::size_t c) { return features[r * n_features() + c]; }

  /// New matrix with the given rows, in that order.
  DatasetMatrix take(const std::vector<std::size_t>& rows) const;
};

/// Every non-label column becomes a feature; text columns are replaced by
/// codes. With `fixed`, codes come from it and unseen values map to -1;
/// otherwise a fresh codebook is learned per text column.
/// Throws SchemaError on remaining nulls, missing/invalid labels.
DatasetMatrix encode_categoricals(const RawTable& t, const Codebooks* fixed = nullptr);

struct SplitSpec {
  double train_frac = 0.70;
  double val_frac = 0.10;
  double test_frac = 0.20;
  std::uint64_t seed = 0;
};

struct SplitSizes {
  std::size_t train, val, test;
};

/// floor(train_frac*n), floor(val_frac*n), remainder. Throws
/// std::invalid_argument when the fractions are out of range or do not sum to 1.
SplitSizes split_sizes(std::size_t n, const SplitSpec& spec);

struct Split {
  DatasetMatrix train, val, test;
  std::vector<std::size_t> train_rows, val_rows, test_rows;  // source row indices
};

/// Seeded shuffle then partition. Rejects fewer than 10 rows.
Split split(const DatasetMatrix& m, const SplitSpec& spec);

struct ScalerParams {
  std::vector<std::string> feature_names;
  std::vector<double> min, max;

  friend bool operator==(const ScalerParams&, const ScalerParams&) = default;
};

ScalerParams fit_minmax(const DatasetMatrix& train);

/// (x - min) / (max - min), clamped to [0, 1]; constant features map to 0.
DatasetMatrix apply_minmax(const ScalerParams& p, const DatasetMatrix& m);

/// drop -> fill -> encode -> split -> fit on train -> scale all three.
struct Preprocessed {
  Split split;  // scaled
  ScalerParams scaler;
  Codebooks codebooks;
};

Preprocessed preprocess(const RawTable& t, const SplitSpec& spec);

}  // namespace ddoslab::prep
