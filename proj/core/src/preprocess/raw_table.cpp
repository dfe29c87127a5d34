#include "ddoslab/preprocess/raw_table.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <unordered_set>

#include "ddoslab/error.hpp"
#include "ddoslab/util/csv.hpp"
#include "ddoslab/util/numfmt.hpp"

namespace ddoslab::prep {

namespace {

constexpr std::array<std::string_view, 7> kStringColumns = {"type",      "module",   "name",     "attrname",
                                                            "attrvalue", "binedges", "binvalues"};

template <class T>
std::size_t count_nulls(const std::vector<std::optional<T>>& v) {
  return static_cast<std::size_t>(std::count(v.begin(), v.end(), std::nullopt));
}

std::optional<std::int64_t> as_int(const std::optional<double>& v) {
  if (!v) return std::nullopt;
  return static_cast<std::int64_t>(std::llround(*v));
}

}  // namespace

std::size_t Column::size() const noexcept {
  return std::visit([](const auto& v) { return v.size(); }, cells);
}

std::size_t Column::null_count() const noexcept {
  return std::visit([](const auto& v) { return count_nulls(v); }, cells);
}

RawTable::RawTable(std::vector<Column> columns) : columns_(std::move(columns)) {
  std::unordered_set<std::string> seen;
  for (const Column& c : columns_) {
    if (!seen.insert(c.name).second) throw SchemaError("duplicate column '" + c.name + "'");
    if (c.size() != columns_.front().size()) throw SchemaError("column '" + c.name + "' has a different length");
  }
}

std::vector<std::string> RawTable::column_names() const {
  std::vector<std::string> out;
  out.reserve(columns_.size());
  for (const Column& c : columns_) out.push_back(c.name);
  return out;
}

std::optional<std::size_t> RawTable::find(std::string_view name) const noexcept {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i].name == name) return i;
  return std::nullopt;
}

const Column& RawTable::column(std::string_view name) const {
  auto i = find(name);
  if (!i) throw SchemaError("missing column '" + std::string(name) + "'");
  return columns_[*i];
}

Column& RawTable::column(std::string_view name) {
  return const_cast<Column&>(static_cast<const RawTable&>(*this).column(name));
}

std::size_t RawTable::null_count() const noexcept {
  std::size_t n = 0;
  for (const Column& c : columns_) n += c.null_count();
  return n;
}

bool is_string_column(std::string_view name) noexcept {
  return std::find(kStringColumns.begin(), kStringColumns.end(), name) != kStringColumns.end();
}

RawTable read_table(std::istream& in, const std::string& source) {
  util::CsvReader reader(in);
  util::CsvRow row;
  if (!reader.next(row)) throw SchemaError(source + ": empty file, no header");

  std::vector<Column> cols;
  for (const auto& h : row) {
    if (!h || h->empty()) throw SchemaError(source + ": empty column name in header");
    Column c{*h, NumericCells{}};
    if (is_string_column(*h)) c.cells = StringCells{};
    cols.push_back(std::move(c));
  }

  while (reader.next(row)) {
    if (row.empty() && cols.size() > 1) continue;  // blank line
    if (row.size() != cols.size()) {
      throw SchemaError(source + ":" + std::to_string(reader.line()) + ": expected " + std::to_string(cols.size()) +
                        " fields, got " + std::to_string(row.size()));
    }
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (auto* s = std::get_if<StringCells>(&cols[i].cells)) {
        s->push_back(std::move(row[i]));
        continue;
      }
      auto& num = std::get<NumericCells>(cols[i].cells);
      if (!row[i] || row[i]->empty()) {
        num.emplace_back();
        continue;
      }
      auto v = util::parse_real(*row[i]);
      if (!v || !std::isfinite(*v)) {
        throw SchemaError(source + ":" + std::to_string(reader.line()) + ": column '" + cols[i].name +
                          "' is not numeric: '" + *row[i] + "'");
      }
      num.push_back(*v);
    }
  }
  return RawTable(std::move(cols));
}

RawTable read_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open for reading");
  return read_table(in, path.string());
}

RawTable table_from_records(const std::vector<telemetry::StatRecord>& records) {
  std::vector<Column> cols;
  for (auto name : telemetry::kFeatureColumns) {
    Column c{std::string(name), NumericCells{}};
    if (is_string_column(name)) c.cells = StringCells{};
    cols.push_back(std::move(c));
  }
  cols.push_back(Column{std::string(telemetry::kLabelColumn), NumericCells{}});

  auto num = [&](std::size_t i) -> NumericCells& { return cols[i].numeric(); };
  auto str = [&](std::size_t i) -> StringCells& { return cols[i].strings(); };
  auto opt_i = [](const std::optional<std::int64_t>& v) -> std::optional<double> {
    if (!v) return std::nullopt;
    return static_cast<double>(*v);
  };
  for (const auto& r : records) {
    num(0).push_back(r.sumweights);
    str(1).push_back(r.type);
    str(2).push_back(r.module);
    str(3).push_back(r.name);
    str(4).push_back(r.attrname);
    str(5).push_back(r.attrvalue);
    num(6).push_back(r.value);
    num(7).push_back(opt_i(r.count));
    num(8).push_back(r.mean);
    num(9).push_back(r.stddev);
    num(10).push_back(r.min);
    num(11).push_back(r.max);
    num(12).push_back(opt_i(r.underflows));
    num(13).push_back(opt_i(r.overflows));
    str(14).push_back(r.binedges);
    str(15).push_back(r.binvalues);
    num(16).push_back(static_cast<double>(r.label));
  }
  return RawTable(std::move(cols));
}

std::vector<telemetry::StatRecord> records_from_table(const RawTable& t) {
  auto num = [&](std::string_view n) -> const NumericCells& { return t.column(n).numeric(); };
  auto str = [&](std::string_view n) -> const StringCells& { return t.column(n).strings(); };
  const auto& sumweights = num("sumweights");
  const auto& type = str("type");
  const auto& module = str("module");
  const auto& name = str("name");
  const auto& attrname = str("attrname");
  const auto& attrvalue = str("attrvalue");
  const auto& value = num("value");
  const auto& count = num("count");
  const auto& mean = num("mean");
  const auto& stddev = num("stddev");
  const auto& min = num("min");
  const auto& max = num("max");
  const auto& underflows = num("underflows");
  const auto& overflows = num("overflows");
  const auto& binedges = str("binedges");
  const auto& binvalues = str("binvalues");
  const auto& label = num(telemetry::kLabelColumn);

  std::vector<telemetry::StatRecord> out(t.rows());
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto& r = out[i];
    r.sumweights = sumweights[i];
    r.type = type[i].value_or("");
    r.module = module[i].value_or("");
    r.name = name[i].value_or("");
    r.attrname = attrname[i];
    r.attrvalue = attrvalue[i];
    r.value = value[i];
    r.count = as_int(count[i]);
    r.mean = mean[i];
    r.stddev = stddev[i];
    r.min = min[i];
    r.max = max[i];
    r.underflows = as_int(underflows[i]);
    r.overflows = as_int(overflows[i]);
    r.binedges = binedges[i];
    r.binvalues = binvalues[i];
    if (!label[i]) throw SchemaError("row " + std::to_string(i) + " has no label");
    r.label = static_cast<int>(*label[i]);
  }
  return out;
}

}  // namespace ddoslab::prep
