#include "ddoslab/preprocess/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "ddoslab/error.hpp"

namespace ddoslab::prep {

namespace {

template <class T>
void fill_column(std::vector<std::optional<T>>& v, const T& fallback) {
  auto first = std::find_if(v.begin(), v.end(), [](const auto& x) { return x.has_value(); });
  const T seed = first == v.end() ? fallback : **first;
  const std::optional<T>* last = nullptr;
  for (auto& x : v) {
    if (x) {
      last = &x;
    } else {
      x = last ? **last : seed;
      last = &x;
    }
  }
}

}  // namespace

RawTable drop_sparse_columns(const RawTable& t) {
  for (auto name : telemetry::kFeatureColumns)
    if (!t.find(name)) throw SchemaError("missing expected column '" + std::string(name) + "'");
  if (!t.find(telemetry::kLabelColumn)) throw SchemaError("missing label column");

  std::vector<Column> kept;
  for (const Column& c : t.columns()) {
    if (std::find(kDroppedColumns.begin(), kDroppedColumns.end(), c.name) != kDroppedColumns.end()) continue;
    kept.push_back(c);
  }
  return RawTable(std::move(kept));
}

RawTable forward_fill(const RawTable& t) {
  RawTable out = t;
  for (Column& c : out.columns()) {
    if (c.is_numeric()) {
      fill_column(c.numeric(), 0.0);
    } else {
      fill_column(c.strings(), std::string());
    }
  }
  return out;
}

// ---------------------------------------------------------------- Codebook

int Codebook::learn(const std::string& s) {
  auto [it, inserted] = index_.try_emplace(s, static_cast<int>(categories_.size()));
  if (inserted) categories_.push_back(s);
  return it->second;
}

int Codebook::code(const std::string& s) const {
  auto it = index_.find(s);
  return it == index_.end() ? -1 : it->second;
}

// ----------------------------------------------------------- DatasetMatrix

DatasetMatrix DatasetMatrix::take(const std::vector<std::size_t>& rows) const {
  DatasetMatrix out;
  out.feature_names = feature_names;
  out.codebooks = codebooks;
  out.n_rows = rows.size();
  const std::size_t f = n_features();
  out.features.resize(rows.size() * f);
  out.labels.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t r = rows[i];
    if (r >= n_rows) throw std::out_of_range("row index out of range");
    std::copy_n(features.begin() + static_cast<std::ptrdiff_t>(r * f), f,
                out.features.begin() + static_cast<std::ptrdiff_t>(i * f));
    out.labels[i] = labels[r];
  }
  return out;
}

DatasetMatrix encode_categoricals(const RawTable& t, const Codebooks* fixed) {
  const auto label_idx = t.find(telemetry::kLabelColumn);
  if (!label_idx) throw SchemaError("missing label column");
  if (t.null_count() != 0) throw SchemaError("cannot encode a table with null cells; forward-fill first");

  DatasetMatrix m;
  m.n_rows = t.rows();
  for (std::size_t c = 0; c < t.cols(); ++c)
    if (c != *label_idx) m.feature_names.push_back(t.columns()[c].name);
  const std::size_t nf = m.n_features();
  m.features.assign(m.n_rows * nf, 0.0);

  std::size_t f = 0;
  for (std::size_t c = 0; c < t.cols(); ++c) {
    if (c == *label_idx) continue;
    const Column& col = t.columns()[c];
    if (col.is_numeric()) {
      const auto& cells = col.numeric();
      for (std::size_t r = 0; r < m.n_rows; ++r) m.features[r * nf + f] = *cells[r];
    } else {
      const auto& cells = col.strings();
      if (fixed) {
        auto it = fixed->find(col.name);
        if (it == fixed->end()) throw SchemaError("no codebook for column '" + col.name + "'");
        for (std::size_t r = 0; r < m.n_rows; ++r) m.features[r * nf + f] = it->second.code(*cells[r]);
        m.codebooks[col.name] = it->second;
      } else {
        Codebook& book = m.codebooks[col.name];
        for (std::size_t r = 0; r < m.n_rows; ++r) m.features[r * nf + f] = book.learn(*cells[r]);
      }
    }
    ++f;
  }

  const auto& label = t.columns()[*label_idx];
  if (!label.is_numeric()) throw SchemaError("label column is not numeric");
  m.labels.resize(m.n_rows);
  for (std::size_t r = 0; r < m.n_rows; ++r) {
    const double v = *label.numeric()[r];
    if (v != 0.0 && v != 1.0) throw SchemaError("label must be 0 or 1 (row " + std::to_string(r) + ")");
    m.labels[r] = static_cast<int>(v);
  }
  return m;
}

// ------------------------------------------------------------------- split

SplitSizes split_sizes(std::size_t n, const SplitSpec& spec) {
  for (double f : {spec.train_frac, spec.val_frac, spec.test_frac})
    if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("split fractions must lie in [0, 1]");
  if (std::abs(spec.train_frac + spec.val_frac + spec.test_frac - 1.0) > 1e-9)
    throw std::invalid_argument("split fractions must sum to 1");
  // The small nudge keeps e.g. 0.7 * 1000 from landing on 699.999...
  auto part = [n](double frac) {
    return static_cast<std::size_t>(std::floor(frac * static_cast<double>(n) * (1.0 + 1e-12)));
  };
  SplitSizes s{part(spec.train_frac), part(spec.val_frac), 0};
  s.test = n - s.train - s.val;
  return s;
}

Split split(const DatasetMatrix& m, const SplitSpec& spec) {
  if (m.n_rows < 10) throw std::invalid_argument("split needs at least 10 rows, got " + std::to_string(m.n_rows));
  const SplitSizes sizes = split_sizes(m.n_rows, spec);

  std::vector<std::size_t> perm(m.n_rows);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::mt19937_64 rng(spec.seed);
  std::shuffle(perm.begin(), perm.end(), rng);

  Split out;
  const auto b = perm.begin();
  out.train_rows.assign(b, b + static_cast<std::ptrdiff_t>(sizes.train));
  out.val_rows.assign(b + static_cast<std::ptrdiff_t>(sizes.train),
                      b + static_cast<std::ptrdiff_t>(sizes.train + sizes.val));
  out.test_rows.assign(b + static_cast<std::ptrdiff_t>(sizes.train + sizes.val), perm.end());
  out.train = m.take(out.train_rows);
  out.val = m.take(out.val_rows);
  out.test = m.take(out.test_rows);
  return out;
}

// ------------------------------------------------------------------ min-max

ScalerParams fit_minmax(const DatasetMatrix& train) {
  if (train.n_rows == 0) throw std::invalid_argument("cannot fit a scaler on an empty matrix");
  const std::size_t nf = train.n_features();
  ScalerParams p;
  p.feature_names = train.feature_names;
  p.min.assign(train.features.begin(), train.features.begin() + static_cast<std::ptrdiff_t>(nf));
  p.max = p.min;
  for (std::size_t r = 1; r < train.n_rows; ++r) {
    for (std::size_t c = 0; c < nf; ++c) {
      const double v = train.at(r, c);
      p.min[c] = std::min(p.min[c], v);
      p.max[c] = std::max(p.max[c], v);
    }
  }
  return p;
}

DatasetMatrix apply_minmax(const ScalerParams& p, const DatasetMatrix& m) {
  const std::size_t nf = m.n_features();
  if (p.min.size() != nf || p.max.size() != nf) {
    throw SchemaError("scaler has " + std::to_string(p.min.size()) + " features, matrix has " + std::to_string(nf));
  }
  DatasetMatrix out = m;
  for (std::size_t c = 0; c < nf; ++c) {
    const double lo = p.min[c];
    const double span = p.max[c] - lo;
    for (std::size_t r = 0; r < m.n_rows; ++r) {
      double& x = out.at(r, c);
      x = span > 0.0 ? std::clamp((x - lo) / span, 0.0, 1.0) : 0.0;
    }
  }
  return out;
}

Preprocessed preprocess(const RawTable& t, const SplitSpec& spec) {
  const DatasetMatrix encoded = encode_categoricals(forward_fill(drop_sparse_columns(t)));
  Preprocessed out;
  out.split = split(encoded, spec);
  out.scaler = fit_minmax(out.split.train);
  out.split.train = apply_minmax(out.scaler, out.split.train);
  out.split.val = apply_minmax(out.scaler, out.split.val);
  out.split.test = apply_minmax(out.scaler, out.split.test);
  out.codebooks = encoded.codebooks;
  return out;
}

}  // namespace ddoslab::prep
