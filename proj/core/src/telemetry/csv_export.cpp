#include "ddoslab/telemetry/csv_export.hpp"

#include <fstream>
#include <stdexcept>

#include "ddoslab/error.hpp"
#include "ddoslab/util/csv.hpp"
#include "ddoslab/util/numfmt.hpp"

namespace ddoslab::telemetry {

namespace {

void put(std::string& line, const std::optional<double>& v) {
  if (v) util::append_real(line, *v);
}

void put(std::string& line, const std::optional<std::int64_t>& v) {
  if (v) line += std::to_string(*v);
}

void put(std::string& line, const std::optional<std::string>& v) {
  // An empty string must stay distinguishable from null.
  if (!v) return;
  if (v->empty()) {
    line += "\"\"";
  } else {
    util::append_csv_field(line, *v);
  }
}

void put(std::string& line, const std::string& v) { put(line, std::optional<std::string>(v)); }

}  // namespace

std::string csv_header() {
  std::string h;
  for (auto col : kFeatureColumns) {
    h += col;
    h += ',';
  }
  h += kLabelColumn;
  return h;
}

std::string csv_row(const StatRecord& r) {
  std::string line;
  put(line, r.sumweights);
  line += ',';
  put(line, r.type);
  line += ',';
  put(line, r.module);
  line += ',';
  put(line, r.name);
  line += ',';
  put(line, r.attrname);
  line += ',';
  put(line, r.attrvalue);
  line += ',';
  put(line, r.value);
  line += ',';
  put(line, r.count);
  line += ',';
  put(line, r.mean);
  line += ',';
  put(line, r.stddev);
  line += ',';
  put(line, r.min);
  line += ',';
  put(line, r.max);
  line += ',';
  put(line, r.underflows);
  line += ',';
  put(line, r.overflows);
  line += ',';
  put(line, r.binedges);
  line += ',';
  put(line, r.binvalues);
  line += ',';
  line += std::to_string(r.label);
  return line;
}

void write_csv(std::span<const StatRecord> records, std::ostream& out) {
  out << csv_header() << '\n';
  for (const StatRecord& r : records) out << csv_row(r) << '\n';
}

void export_csv(std::span<const StatRecord> records, const std::filesystem::path& path) {
  if (records.empty()) throw std::invalid_argument("refusing to export an empty record list to " + path.string());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  write_csv(records, out);
  out.flush();
  if (!out) throw IoError(path.string(), "write failed");
}

std::string run_file_name(sim::Scenario scenario, std::uint64_t seed) {
  return std::string(sim::to_string(scenario)) + "_" + std::to_string(seed) + ".csv";
}

}  // namespace ddoslab::telemetry
