#include "ddoslab/telemetry/stat_registry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "ddoslab/util/numfmt.hpp"

namespace ddoslab::telemetry {

namespace {

void require_finite(double v, std::string_view module, std::string_view name) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument("non-finite statistic value for " + std::string(module) + "." +
                                std::string(name));
  }
}

std::vector<double> parse_reals(const std::string& s) {
  std::vector<double> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    auto v = util::parse_real(tok);
    if (!v) return {};
    out.push_back(*v);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Histogram

Histogram::Histogram(BinRange range) : range_(range), bins_(range.bins, 0) {
  if (range.bins == 0 || !(range.hi > range.lo)) throw std::invalid_argument("invalid histogram bin range");
}

void Histogram::add(double x) {
  ++count_;
  if (count_ == 1) {
    min_ = max_ = x;
  } else {
    min_ = std::min(min_, x);
    max_ = std::max(max_, x);
  }
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);

  if (x < range_.lo) {
    ++underflows_;
  } else if (x >= range_.hi) {
    ++overflows_;
  } else {
    const double width = (range_.hi - range_.lo) / static_cast<double>(range_.bins);
    auto idx = static_cast<std::size_t>((x - range_.lo) / width);
    bins_[std::min(idx, range_.bins - 1)] += 1;
  }
}

double Histogram::stddev() const noexcept {
  if (count_ <= 1) return 0.0;
  return std::sqrt(std::max(0.0, m2_ / static_cast<double>(count_ - 1)));
}

std::string Histogram::binedges() const {
  std::string out;
  const double width = (range_.hi - range_.lo) / static_cast<double>(range_.bins);
  for (std::size_t i = 0; i <= range_.bins; ++i) {
    if (i != 0) out.push_back(' ');
    const double edge = i == range_.bins ? range_.hi : range_.lo + static_cast<double>(i) * width;
    util::append_real(out, edge);
  }
  return out;
}

std::string Histogram::binvalues() const {
  std::string out;
  for (std::size_t i = 0; i < bins_.size(); ++i) {
    if (i != 0) out.push_back(' ');
    out += std::to_string(bins_[i]);
  }
  return out;
}

// ------------------------------------------------------------- StatRegistry

StatRegistry::StatRegistry(RankFn rank) : rank_(std::move(rank)) {}

void StatRegistry::set_bin_range(std::string name, BinRange range) {
  name_ranges_[std::move(name)] = range;
}

void StatRegistry::set_bin_range(std::string module, std::string name, BinRange range) {
  key_ranges_[Key{std::move(module), std::move(name)}] = range;
}

void StatRegistry::set_unit(std::string name, std::string unit) { units_[std::move(name)] = std::move(unit); }

BinRange StatRegistry::range_for(const Key& key) const {
  if (auto it = key_ranges_.find(key); it != key_ranges_.end()) return it->second;
  if (auto it = name_ranges_.find(key.second); it != name_ranges_.end()) return it->second;
  return BinRange{};
}

void StatRegistry::record_scalar(std::string_view module, std::string_view name, double v) {
  if (finalized_) throw std::logic_error("registry already finalized");
  require_finite(v, module, name);
  Key key{std::string(module), std::string(name)};
  if (histograms_.contains(key)) throw std::invalid_argument("statistic already recorded as histogram");
  scalars_[std::move(key)] = v;
}

void StatRegistry::record_sample(std::string_view module, std::string_view name, double x) {
  if (finalized_) throw std::logic_error("registry already finalized");
  require_finite(x, module, name);
  Key key{std::string(module), std::string(name)};
  auto it = histograms_.find(key);
  if (it == histograms_.end()) {
    if (scalars_.contains(key)) throw std::invalid_argument("statistic already recorded as scalar");
    it = histograms_.emplace(key, Histogram(range_for(key))).first;
  }
  it->second.add(x);
}

std::vector<StatRecord> StatRegistry::finalize(int label) && {
  if (finalized_) throw std::logic_error("registry already finalized");
  if (label != kBenign && label != kAttack) throw std::invalid_argument("label must be 0 or 1");
  finalized_ = true;

  struct Entry {
    std::int64_t rank;
    const Key* key;
    int kind;  // 0 scalar, 1 histogram
  };
  std::vector<Entry> order;
  order.reserve(size());
  auto rank_of = [&](const Key& k) { return rank_ ? rank_(k.first) : 0; };
  for (const auto& [k, v] : scalars_) order.push_back({rank_of(k), &k, 0});
  for (const auto& [k, h] : histograms_) order.push_back({rank_of(k), &k, 1});
  std::sort(order.begin(), order.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.rank, a.key->first, a.kind, a.key->second) <
           std::tie(b.rank, b.key->first, b.kind, b.key->second);
  });

  std::vector<StatRecord> out;
  out.reserve(order.size());
  for (const Entry& e : order) {
    StatRecord r;
    r.module = e.key->first;
    r.name = e.key->second;
    r.label = label;
    if (auto u = units_.find(r.name); u != units_.end()) {
      r.attrname = "unit";
      r.attrvalue = u->second;
    }
    if (e.kind == 0) {
      r.type = "scalar";
      r.value = scalars_.at(*e.key);
    } else {
      const Histogram& h = histograms_.at(*e.key);
      r.type = "histogram";
      r.count = h.count();
      r.sumweights = static_cast<double>(h.count());
      r.mean = std::clamp(h.mean(), h.min(), h.max());
      r.stddev = h.stddev();
      r.min = h.min();
      r.max = h.max();
      r.underflows = h.underflows();
      r.overflows = h.overflows();
      r.binedges = h.binedges();
      r.binvalues = h.binvalues();
    }
    out.push_back(std::move(r));
  }
  scalars_.clear();
  histograms_.clear();
  return out;
}

// --------------------------------------------------------------- validation

std::string check_record(const StatRecord& r) {
  if (r.label != kBenign && r.label != kAttack) return "label must be 0 or 1";
  const bool any_hist = r.sumweights || r.count || r.mean || r.stddev || r.min || r.max || r.underflows ||
                        r.overflows || r.binedges || r.binvalues;
  const bool all_hist = r.sumweights && r.count && r.mean && r.stddev && r.min && r.max && r.underflows &&
                        r.overflows && r.binedges && r.binvalues;
  if (r.is_scalar()) {
    if (!r.value) return "scalar without value";
    if (any_hist) return "scalar with histogram fields";
    return {};
  }
  if (!r.is_histogram()) return "unknown record type '" + r.type + "'";
  if (r.value) return "histogram with value";
  if (!all_hist) return "histogram with missing fields";
  if (*r.stddev < 0.0) return "negative stddev";
  if (*r.count > 0 && !(*r.min <= *r.mean && *r.mean <= *r.max)) return "mean outside [min, max]";
  const auto edges = parse_reals(*r.binedges);
  if (edges.size() < 2) return "binedges malformed";
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i] > edges[i - 1])) return "binedges not strictly increasing";
  const auto values = parse_reals(*r.binvalues);
  if (values.size() + 1 != edges.size()) return "binvalues/binedges length mismatch";
  double total = static_cast<double>(*r.underflows + *r.overflows);
  for (double v : values) total += v;
  if (total != static_cast<double>(*r.count)) return "count != sum(binvalues) + underflows + overflows";
  if (*r.sumweights != static_cast<double>(*r.count)) return "sumweights != count";
  return {};
}

}  // namespace ddoslab::telemetry
