#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ddoslab/telemetry/stat_record.hpp"

namespace ddoslab::prep {

using NumericCells = std::vector<std::optional<double>>;
using StringCells = std::vector<std::optional<std::string>>;

struct Column {
  std::string name;
  std::variant<NumericCells, StringCells> cells;

  bool is_numeric() const noexcept { return std::holds_alternative<NumericCells>(cells); }
  std::size_t size() const noexcept;
  std::size_t null_count() const noexcept;

  NumericCells& numeric() { return std::get<NumericCells>(cells); }
  const NumericCells& numeric() const { return std::get<NumericCells>(cells); }
  StringCells& strings() { return std::get<StringCells>(cells); }
  const StringCells& strings() const { return std::get<StringCells>(cells); }
};

/// Column-major table with nullable cells.
class RawTable {
 public:
  RawTable() = default;
  /// Throws SchemaError on duplicate names or ragged columns.
  explicit RawTable(std::vector<Column> columns);

  std::size_t rows() const noexcept { return columns_.empty() ? 0 : columns_.front().size(); }
  std::size_t cols() const noexcept { return columns_.size(); }
  const std::vector<Column>& columns() const noexcept { return columns_; }
  std::vector<Column>& columns() noexcept { return columns_; }
  std::vector<std::string> column_names() const;

  std::optional<std::size_t> find(std::string_view name) const noexcept;
  /// Throws SchemaError when absent.
  const Column& column(std::string_view name) const;
  Column& column(std::string_view name);

  std::size_t null_count() const noexcept;

 private:
  std::vector<Column> columns_;
};

/// Columns of the result schema that hold text; all others are numeric.
bool is_string_column(std::string_view name) noexcept;

/// Parses a result CSV (header row + records). Text columns keep the
/// null/"" distinction; numeric cells must parse as reals.
RawTable read_table(std::istream& in, const std::string& source = "<stream>");
RawTable read_table(const std::filesystem::path& path);

RawTable table_from_records(const std::vector<telemetry::StatRecord>& records);
/// Inverse of table_from_records for a full 17-column table.
std::vector<telemetry::StatRecord> records_from_table(const RawTable& t);

}  // namespace ddoslab::prep
