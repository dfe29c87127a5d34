#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <set>
#include <sstream>

#include "ddoslab/error.hpp"
#include "ddoslab/preprocess/artifacts.hpp"
#include "ddoslab/preprocess/raw_table.hpp"
#include "ddoslab/preprocess/transforms.hpp"
#include "ddoslab/telemetry/collector.hpp"
#include "gen.hpp"

using namespace ddoslab;
using namespace ddoslab::prep;

namespace {

constexpr auto null = std::nullopt;

Column num(std::string name, NumericCells cells) { return {std::move(name), std::move(cells)}; }
Column str(std::string name, StringCells cells) { return {std::move(name), std::move(cells)}; }

RawTable simulated_table(std::uint32_t n_ue, double duration) {
  std::vector<telemetry::StatRecord> recs;
  for (auto s : {sim::Scenario::normal, sim::Scenario::ddos}) {
    sim::ScenarioConfig c;
    c.scenario = s;
    c.n_ue = n_ue;
    c.duration_s = duration;
    auto r = telemetry::simulate_and_collect(c).records;
    recs.insert(recs.end(), r.begin(), r.end());
  }
  return table_from_records(recs);
}

// Small fully-populated matrix for split/scale tests.
DatasetMatrix matrix(std::size_t n, std::size_t f, std::uint64_t seed) {
  testgen::Rng rng(seed);
  DatasetMatrix m;
  m.n_rows = n;
  for (std::size_t c = 0; c < f; ++c) m.feature_names.push_back("f" + std::to_string(c));
  m.features = testgen::reals(rng, n * f, -10.0, 10.0);
  m.labels = testgen::bits(rng, n);
  return m;
}

std::string tmp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("ddoslab_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p.string();
}

}  // namespace

// --------------------------------------------------------------------- drop

TEST(DropSparse, SeventeenColumnsBecomeSeven) {
  const RawTable t = simulated_table(4, 3.0);
  ASSERT_EQ(t.cols(), 17u);
  const RawTable d = drop_sparse_columns(t);
  EXPECT_EQ(d.cols(), 7u);
  EXPECT_EQ(d.rows(), t.rows());
  EXPECT_EQ(d.column_names(),
            (std::vector<std::string>{"type", "module", "name", "attrname", "attrvalue", "value", "label"}));
}

TEST(DropSparse, MissingColumnIsSchemaError) {
  RawTable t = simulated_table(3, 2.0);
  auto cols = t.columns();
  cols.erase(std::remove_if(cols.begin(), cols.end(), [](const Column& c) { return c.name == "binvalues"; }),
             cols.end());
  EXPECT_THROW(drop_sparse_columns(RawTable(cols)), SchemaError);
}

// --------------------------------------------------------------------- fill

TEST(ForwardFill, Textbook) {
  const RawTable t({num("value", {1.0, null, null, 4.0})});
  EXPECT_EQ(forward_fill(t).column("value").numeric(), (NumericCells{1.0, 1.0, 1.0, 4.0}));
}

TEST(ForwardFill, LeadingNullsTakeFirstValue) {
  const RawTable t({num("value", {null, 2.0, null}), str("attrname", {null, null, std::string("unit")})});
  const RawTable f = forward_fill(t);
  EXPECT_EQ(f.column("value").numeric(), (NumericCells{2.0, 2.0, 2.0}));
  EXPECT_EQ(f.column("attrname").strings(), (StringCells{"unit", "unit", "unit"}));
}

TEST(ForwardFill, AllNullColumns) {
  const RawTable t({num("value", {null, null}), str("attrvalue", {null, null})});
  const RawTable f = forward_fill(t);
  EXPECT_EQ(f.column("value").numeric(), (NumericCells{0.0, 0.0}));
  EXPECT_EQ(f.column("attrvalue").strings(), (StringCells{"", ""}));
  EXPECT_EQ(f.null_count(), 0u);
}

TEST(ForwardFill, MatchesScanOracleOnRandomColumns) {
  testgen::Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = testgen::index(rng, 1, 40);
    NumericCells cells(n);
    for (auto& c : cells)
      if (testgen::uniform(rng, 0, 1) < 0.6) c = testgen::uniform(rng, -5, 5);
    const auto filled = forward_fill(RawTable({num("value", cells)})).column("value").numeric();
    std::optional<double> first;
    for (const auto& c : cells)
      if (c) {
        first = c;
        break;
      }
    std::optional<double> last = first ? first : std::optional<double>(0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (cells[i]) last = cells[i];
      ASSERT_EQ(filled[i], last);
    }
  }
}

// ------------------------------------------------------------------- encode

TEST(Encode, FirstAppearanceCodes) {
  const RawTable t({str("type", {"scalar", "histogram", "scalar"}), num("value", {1.5, 2.5, -3.0}),
                    num("label", {0.0, 1.0, 0.0})});
  const DatasetMatrix m = encode_categoricals(t);
  ASSERT_EQ(m.n_features(), 2u);
  EXPECT_EQ(m.at(0, 0), 0.0);
  EXPECT_EQ(m.at(1, 0), 1.0);
  EXPECT_EQ(m.at(2, 0), 0.0);
  EXPECT_EQ(m.at(1, 1), 2.5);
  EXPECT_EQ(m.labels, (std::vector<int>{0, 1, 0}));
}

TEST(Encode, SharedCodebookAgreesAndUnseenIsMinusOne) {
  const RawTable a({str("module", {"net.gnb", "net.core", "net.ue[0]"}), num("label", {0.0, 0.0, 1.0})});
  const RawTable b({str("module", {"net.ue[0]", "net.router", "net.gnb"}), num("label", {1.0, 1.0, 0.0})});
  const DatasetMatrix ma = encode_categoricals(a);
  const DatasetMatrix mb = encode_categoricals(b, &ma.codebooks);
  EXPECT_EQ(mb.at(0, 0), ma.at(2, 0));
  EXPECT_EQ(mb.at(2, 0), ma.at(0, 0));
  EXPECT_EQ(mb.at(1, 0), -1.0);
}

TEST(Encode, RejectsNullsAndBadLabels) {
  EXPECT_THROW(encode_categoricals(RawTable({num("value", {1.0, null}), num("label", {0.0, 1.0})})), SchemaError);
  EXPECT_THROW(encode_categoricals(RawTable({num("value", {1.0, 2.0}), num("label", {0.0, 2.0})})), SchemaError);
  EXPECT_THROW(encode_categoricals(RawTable({num("value", {1.0, 2.0})})), SchemaError);
}

// -------------------------------------------------------------------- split

TEST(Split, FloorArithmetic) {
  const SplitSpec spec;
  auto s = split_sizes(1000, spec);
  EXPECT_EQ(s.train, 700u);
  EXPECT_EQ(s.val, 100u);
  EXPECT_EQ(s.test, 200u);
  s = split_sizes(512666, spec);
  EXPECT_EQ(s.train, 358866u);
  EXPECT_EQ(s.val, 51266u);
  EXPECT_EQ(s.test, 102534u);
}

TEST(Split, SizesMatchFloorOracleForManyN) {
  const SplitSpec spec;
  for (std::size_t n = 10; n < 5000; n += 7) {
    const auto s = split_sizes(n, spec);
    // Exact integer oracle: floor(7n/10), floor(n/10).
    EXPECT_EQ(s.train, 7 * n / 10) << n;
    EXPECT_EQ(s.val, n / 10) << n;
    EXPECT_EQ(s.train + s.val + s.test, n);
  }
  EXPECT_THROW(split_sizes(100, SplitSpec{0.7, 0.2, 0.2, 0}), std::invalid_argument);
}

TEST(Split, DisjointCoveringAndDeterministic) {
  const DatasetMatrix m = matrix(137, 3, 1);
  const SplitSpec spec{0.7, 0.1, 0.2, 99};
  const Split a = split(m, spec), b = split(m, spec);
  EXPECT_EQ(a.train_rows, b.train_rows);
  EXPECT_EQ(a.test_rows, b.test_rows);
  std::vector<std::size_t> all;
  for (const auto* v : {&a.train_rows, &a.val_rows, &a.test_rows}) all.insert(all.end(), v->begin(), v->end());
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> want(137);
  std::iota(want.begin(), want.end(), 0);
  EXPECT_EQ(all, want);
  EXPECT_EQ(a.train.n_rows, 95u);
  EXPECT_EQ(a.val.n_rows, 13u);
  EXPECT_EQ(a.test.n_rows, 29u);
  // rows carry their labels along
  for (std::size_t i = 0; i < a.train_rows.size(); ++i) EXPECT_EQ(a.train.labels[i], m.labels[a.train_rows[i]]);
  const Split c = split(m, SplitSpec{0.7, 0.1, 0.2, 100});
  EXPECT_NE(a.train_rows, c.train_rows);
}

TEST(Split, RejectsTinyInputs) { EXPECT_THROW(split(matrix(9, 2, 1), SplitSpec{}), std::invalid_argument); }

// ------------------------------------------------------------------ scaling

TEST(MinMax, FormulaClampAndConstant) {
  DatasetMatrix train;
  train.n_rows = 3;
  train.feature_names = {"a", "b"};
  train.features = {2, 5, 4, 5, 6, 5};
  train.labels = {0, 1, 0};
  const ScalerParams p = fit_minmax(train);
  EXPECT_EQ(p.min, (std::vector<double>{2, 5}));
  EXPECT_EQ(p.max, (std::vector<double>{6, 5}));
  const DatasetMatrix s = apply_minmax(p, train);
  EXPECT_EQ(s.features, (std::vector<double>{0, 0, 0.5, 0, 1, 0}));

  DatasetMatrix test = train;
  test.n_rows = 1;
  test.features = {8, 7};
  test.labels = {1};
  EXPECT_EQ(apply_minmax(p, test).features, (std::vector<double>{1.0, 0.0}));
  test.features = {-100, 5};
  EXPECT_EQ(apply_minmax(p, test).at(0, 0), 0.0);
}

TEST(MinMax, RangeAndIdempotence) {
  testgen::Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const DatasetMatrix train = matrix(testgen::index(rng, 2, 60), testgen::index(rng, 1, 6), trial);
    const DatasetMatrix other = matrix(20, train.n_features(), trial + 1000);
    const ScalerParams p = fit_minmax(train);
    const DatasetMatrix once = apply_minmax(p, other);
    for (double x : once.features) {
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, 1.0);
    }
    const DatasetMatrix scaled = apply_minmax(p, train);
    const DatasetMatrix twice = apply_minmax(fit_minmax(scaled), scaled);
    for (std::size_t i = 0; i < scaled.features.size(); ++i) EXPECT_NEAR(twice.features[i], scaled.features[i], 1e-12);
  }
}

TEST(MinMax, FeatureCountMismatch) {
  const ScalerParams p = fit_minmax(matrix(10, 3, 1));
  EXPECT_THROW(apply_minmax(p, matrix(10, 2, 1)), SchemaError);
}

// ------------------------------------------------------------------ pipeline

TEST(Preprocess, EndToEndContract) {
  const RawTable t = simulated_table(10, 5.0);
  const Preprocessed p = preprocess(t, SplitSpec{0.7, 0.1, 0.2, 3});
  const auto sizes = split_sizes(t.rows(), SplitSpec{});
  EXPECT_EQ(p.split.train.n_rows, sizes.train);
  EXPECT_EQ(p.split.val.n_rows, sizes.val);
  EXPECT_EQ(p.split.test.n_rows, sizes.test);
  for (const auto* m : {&p.split.train, &p.split.val, &p.split.test}) {
    EXPECT_EQ(m->feature_names,
              (std::vector<std::string>{"type", "module", "name", "attrname", "attrvalue", "value"}));
    for (double x : m->features) {
      ASSERT_TRUE(std::isfinite(x));
      ASSERT_GE(x, 0.0);
      ASSERT_LE(x, 1.0);
    }
  }
  // scaler fitted on training rows only
  const Split raw = split(encode_categoricals(forward_fill(drop_sparse_columns(t))), SplitSpec{0.7, 0.1, 0.2, 3});
  EXPECT_EQ(p.scaler, fit_minmax(raw.train));
}

// ---------------------------------------------------------------- artifacts

TEST(Artifacts, RoundTrip) {
  const RawTable t = simulated_table(6, 3.0);
  const Preprocessed p = preprocess(t, SplitSpec{0.7, 0.1, 0.2, 8});
  const std::string dir = tmp_dir("artifacts");
  write_preprocessed(p, dir);
  const DatasetMatrix back = read_matrix_csv(std::filesystem::path(dir) / "train.csv");
  EXPECT_EQ(back.n_rows, p.split.train.n_rows);
  EXPECT_EQ(back.features, p.split.train.features);
  EXPECT_EQ(back.labels, p.split.train.labels);
  EXPECT_EQ(scaler_from_json(read_text_file(std::filesystem::path(dir) / "scaler.json")), p.scaler);
  EXPECT_EQ(codebooks_from_json(read_text_file(std::filesystem::path(dir) / "codebooks.json")), p.codebooks);
  EXPECT_THROW(read_text_file(std::filesystem::path(dir) / "missing.json"), IoError);
  EXPECT_THROW(scaler_from_json("[1,2]"), SchemaError);
}

TEST(RawTable, ReaderRejectsTextInNumericColumn) {
  std::istringstream in("value,label\nabc,0\n");
  EXPECT_THROW(read_table(in), SchemaError);
  std::istringstream ok("value,label\n1.5,0\n\n,1\n");
  const RawTable t = read_table(ok);
  EXPECT_EQ(t.rows(), 2u);
  EXPECT_EQ(t.column("value").null_count(), 1u);
  EXPECT_THROW(RawTable({num("a", {1.0}), num("a", {2.0})}), SchemaError);
  EXPECT_THROW(RawTable({num("a", {1.0}), num("b", {2.0, 3.0})}), SchemaError);
}
