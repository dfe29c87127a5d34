#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ddoslab/telemetry/stat_record.hpp"

namespace ddoslab::telemetry {

/// Fixed-width binning over [lo, hi).
struct BinRange {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t bins = 20;
};

/// Streaming count/mean/stddev (Welford) plus fixed-width bins.
class Histogram {
 public:
  explicit Histogram(BinRange range = {});

  void add(double x);

  std::int64_t count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }
  /// Sample standard deviation (n - 1 denominator); 0 when count <= 1.
  double stddev() const noexcept;
  double min() const noexcept { return min_; }
  double max() const noexcept { return max_; }
  std::int64_t underflows() const noexcept { return underflows_; }
  std::int64_t overflows() const noexcept { return overflows_; }
  const std::vector<std::int64_t>& bin_counts() const noexcept { return bins_; }
  const BinRange& range() const noexcept { return range_; }

  std::string binedges() const;
  std::string binvalues() const;

 private:
  BinRange range_;
  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double min_ = 0.0;
  double max_ = 0.0;
  std::int64_t underflows_ = 0;
  std::int64_t overflows_ = 0;
  std::vector<std::int64_t> bins_;
};

/// Accumulators keyed by (module, name). Scalars are last-write-wins,
/// histograms are created on their first sample.
///
/// Records come out of finalize() ordered by (rank(module), module,
/// scalars before histograms, name). The rank function lets a caller group
/// every module that belongs to one simulated node together; without one
/// all ranks are 0 and the order is lexicographic.
class StatRegistry {
 public:
  using RankFn = std::function<std::int64_t(std::string_view module)>;

  explicit StatRegistry(RankFn rank = {});

  /// Bin range for histograms named `name` (any module). Default: [0, 1), 20 bins.
  void set_bin_range(std::string name, BinRange range);
  /// Bin range for one (module, name) pair; wins over the per-name range.
  void set_bin_range(std::string module, std::string name, BinRange range);
  /// Records named `name` get attrname="unit", attrvalue=`unit`.
  void set_unit(std::string name, std::string unit);

  /// Throws std::invalid_argument for NaN or infinite `v`.
  void record_scalar(std::string_view module, std::string_view name, double v);
  /// Throws std::invalid_argument for NaN or infinite `x`, or when the key
  /// already holds a scalar.
  void record_sample(std::string_view module, std::string_view name, double x);

  std::size_t size() const noexcept { return scalars_.size() + histograms_.size(); }

  /// One record per accumulator, all labelled `label` (0 or 1). Consumes
  /// the registry; a second call throws std::logic_error.
  std::vector<StatRecord> finalize(int label) &&;

 private:
  using Key = std::pair<std::string, std::string>;

  BinRange range_for(const Key& key) const;

  RankFn rank_;
  std::map<Key, double> scalars_;
  std::map<Key, Histogram> histograms_;
  std::map<std::string, BinRange> name_ranges_;
  std::map<Key, BinRange> key_ranges_;
  std::map<std::string, std::string> units_;
  bool finalized_ = false;
};

}  // namespace ddoslab::telemetry
