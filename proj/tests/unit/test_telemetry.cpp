#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "ddoslab/preprocess/raw_table.hpp"
#include "ddoslab/simcore/topology.hpp"
#include "ddoslab/telemetry/collector.hpp"
#include "ddoslab/telemetry/csv_export.hpp"
#include "ddoslab/telemetry/stat_registry.hpp"
#include "gen.hpp"

using namespace ddoslab;
using namespace ddoslab::telemetry;

namespace {

const StatRecord& only(const std::vector<StatRecord>& v) {
  EXPECT_EQ(v.size(), 1u);
  return v.front();
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Registry, ScalarRowHasNoHistogramFields) {
  StatRegistry reg;
  reg.record_scalar("net.router", "pktDropped", 42);
  const auto recs = std::move(reg).finalize(kBenign);
  const auto& r = only(recs);
  EXPECT_EQ(r.type, "scalar");
  EXPECT_EQ(r.value, 42.0);
  EXPECT_FALSE(r.count || r.mean || r.binedges || r.sumweights);
  EXPECT_EQ(check_record(r), "");
}

TEST(Registry, LastWriteWins) {
  StatRegistry reg;
  reg.record_scalar("net.core", "x", 1);
  reg.record_scalar("net.core", "x", 5);
  EXPECT_EQ(only(std::move(reg).finalize(kBenign)).value, 5.0);
}

TEST(Registry, OneRowPerNodeAndScalar) {
  sim::ScenarioConfig c;
  const auto topo = sim::build_topology(c);
  StatRegistry reg;
  for (const auto& n : topo.nodes())
    for (const char* name : {"sent", "received", "dropped"}) reg.record_scalar(n.module, name, 1.0);
  const auto recs = std::move(reg).finalize(kAttack);
  EXPECT_EQ(recs.size(), 321u);
}

TEST(Registry, SampleStatistics) {
  StatRegistry reg;
  reg.set_bin_range("rtt", {0.0, 10.0, 20});
  for (double x : {1.0, 2.0, 3.0}) reg.record_sample("net.ue[0].pingApp", "rtt", x);
  const auto recs = std::move(reg).finalize(kBenign);
  const auto& r = only(recs);
  EXPECT_EQ(r.count, 3);
  EXPECT_DOUBLE_EQ(*r.mean, 2.0);
  EXPECT_EQ(r.min, 1.0);
  EXPECT_EQ(r.max, 3.0);
  EXPECT_DOUBLE_EQ(*r.stddev, 1.0);
  EXPECT_EQ(r.sumweights, 3.0);
  EXPECT_EQ(check_record(r), "");
}

TEST(Registry, SingleSampleIsDegenerate) {
  StatRegistry reg;
  reg.set_bin_range("v", {0.0, 10.0, 20});
  reg.record_sample("m", "v", 5.0);
  const auto recs = std::move(reg).finalize(kBenign);
  const auto& r = only(recs);
  EXPECT_EQ(r.stddev, 0.0);
  EXPECT_EQ(r.min, 5.0);
  EXPECT_EQ(r.max, 5.0);
  EXPECT_EQ(r.mean, 5.0);
}

TEST(Registry, OutOfRangeSamplesStillCount) {
  StatRegistry reg;
  reg.set_bin_range("v", {0.0, 1.0, 20});
  reg.record_sample("m", "v", -3.0);
  reg.record_sample("m", "v", 0.5);
  reg.record_sample("m", "v", 1.0);
  const auto recs = std::move(reg).finalize(kBenign);
  const auto& r = only(recs);
  EXPECT_EQ(r.underflows, 1);
  EXPECT_EQ(r.overflows, 1);
  EXPECT_EQ(r.count, 3);
  EXPECT_EQ(check_record(r), "");
}

TEST(Registry, RejectsNonFiniteSamples) {
  StatRegistry reg;
  EXPECT_THROW(reg.record_sample("m", "v", std::nan("")), std::invalid_argument);
  EXPECT_THROW(reg.record_scalar("m", "v", INFINITY), std::invalid_argument);
}

TEST(Registry, FinalizeLabelsEverythingAndEmptyIsEmpty) {
  StatRegistry reg;
  reg.record_scalar("a", "x", 1);
  reg.record_scalar("b", "y", 2);
  reg.record_sample("c", "z", 0.1);
  const auto recs = std::move(reg).finalize(kAttack);
  ASSERT_EQ(recs.size(), 3u);
  for (const auto& r : recs) EXPECT_EQ(r.label, kAttack);
  EXPECT_TRUE(StatRegistry{}.finalize(kBenign).empty());
}

TEST(Registry, FinalizeTwiceThrows) {
  StatRegistry reg;
  reg.record_scalar("a", "x", 1);
  auto first = std::move(reg).finalize(kBenign);
  EXPECT_THROW(std::move(reg).finalize(kBenign), std::logic_error);
  EXPECT_THROW(reg.record_scalar("a", "x", 2), std::logic_error);
}

TEST(Registry, WelfordMatchesTwoPass) {
  testgen::Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = testgen::index(rng, 2, 400);
    const double offset = testgen::uniform(rng, -1e3, 1e3);
    auto xs = testgen::reals(rng, n, offset - 5.0, offset + 5.0);
    Histogram h({offset - 5.0, offset + 5.0, 20});
    for (double x : xs) h.add(x);
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    EXPECT_NEAR(h.mean(), mean, 1e-9 * std::max(1.0, std::abs(mean)));
    EXPECT_NEAR(h.stddev(), sd, 1e-9 * std::max(1.0, sd));
    std::int64_t total = h.underflows() + h.overflows();
    for (auto b : h.bin_counts()) total += b;
    EXPECT_EQ(total, h.count());
  }
}

TEST(Registry, HistogramEdgesIncrease) {
  Histogram h({-1.0, 1.0, 20});
  std::istringstream in(h.binedges());
  double prev = -INFINITY, x;
  int n = 0;
  while (in >> x) {
    EXPECT_GT(x, prev);
    prev = x;
    ++n;
  }
  EXPECT_EQ(n, 21);
  EXPECT_THROW(Histogram({1.0, 1.0, 20}), std::invalid_argument);
}

// ---------------------------------------------------------------- collector

TEST(Collector, RecordsAreValidAndLabelPure) {
  for (auto s : {sim::Scenario::normal, sim::Scenario::ddos}) {
    sim::ScenarioConfig c;
    c.scenario = s;
    c.n_ue = 10;
    c.duration_s = 5.0;
    const auto res = simulate_and_collect(c);
    ASSERT_FALSE(res.records.empty());
    for (const auto& r : res.records) {
      EXPECT_EQ(check_record(r), "") << r.module << "." << r.name;
      EXPECT_EQ(r.label, label_for(s));
    }
  }
  EXPECT_EQ(label_for(sim::Scenario::normal), kBenign);
  EXPECT_EQ(label_for(sim::Scenario::ddos), kAttack);
}

TEST(Collector, IsDeterministic) {
  sim::ScenarioConfig c;
  c.scenario = sim::Scenario::ddos;
  c.n_ue = 8;
  c.duration_s = 3.0;
  EXPECT_EQ(simulate_and_collect(c).records, simulate_and_collect(c).records);
}

TEST(Collector, DdosRecordsDrops) {
  sim::ScenarioConfig c;
  c.scenario = sim::Scenario::ddos;
  c.duration_s = 3.0;
  const auto res = simulate_and_collect(c);
  double dropped = 0.0;
  for (const auto& r : res.records)
    if (r.is_scalar() && r.name.find("rop") != std::string::npos) dropped += *r.value;
  EXPECT_GT(dropped, 0.0);
}

// ---------------------------------------------------------------------- CSV

TEST(CsvExport, HeaderIsExact) {
  EXPECT_EQ(csv_header(),
            "sumweights,type,module,name,attrname,attrvalue,value,count,mean,stddev,min,max,underflows,overflows,"
            "binedges,binvalues,label");
}

TEST(CsvExport, ThreeRecordsFourLines) {
  StatRegistry reg;
  reg.record_scalar("a", "x", 1);
  reg.record_scalar("b", "x", 2);
  reg.record_sample("c", "y", 0.3);
  const auto recs = std::move(reg).finalize(kBenign);
  std::ostringstream out;
  write_csv(recs, out);
  EXPECT_EQ(count_lines(out.str()), 4u);
}

TEST(CsvExport, HistogramHasEmptyValueField) {
  StatRegistry reg;
  reg.record_sample("c", "y", 0.3);
  const auto recs = std::move(reg).finalize(kBenign);
  const std::string row = csv_row(recs.front());
  // fields 6 and 7 (attrvalue, value) are null for an untagged histogram
  EXPECT_NE(row.find(",,,"), std::string::npos);
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 16);
}

TEST(CsvExport, CommaStringsAreQuoted) {
  StatRecord r;
  r.type = "scalar";
  r.module = "net.a,b";
  r.name = "x";
  r.value = 0.1;
  EXPECT_NE(csv_row(r).find("\"net.a,b\""), std::string::npos);
}

TEST(CsvExport, RoundTripsThroughImporter) {
  sim::ScenarioConfig c;
  c.scenario = sim::Scenario::ddos;
  c.n_ue = 6;
  c.duration_s = 4.0;
  auto recs = simulate_and_collect(c).records;
  StatRecord odd;
  odd.type = "scalar";
  odd.module = "net.\"odd\",module";
  odd.name = "v";
  odd.value = 0.1 + 0.2;
  odd.label = kAttack;
  recs.push_back(odd);

  std::stringstream buf;
  write_csv(recs, buf);
  const auto table = prep::read_table(buf);
  EXPECT_EQ(table.rows(), recs.size());
  EXPECT_EQ(table.cols(), 17u);
  EXPECT_EQ(prep::records_from_table(table), recs);
  EXPECT_EQ(prep::records_from_table(prep::table_from_records(recs)), recs);
}

TEST(CsvExport, FileNameAndIoError) {
  EXPECT_EQ(run_file_name(sim::Scenario::ddos, 7), "ddos_7.csv");
  StatRecord r;
  r.type = "scalar";
  r.value = 1;
  std::vector<StatRecord> recs{r};
  EXPECT_THROW(export_csv(recs, "/nonexistent-dir/x/y.csv"), std::exception);
}
