#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ddoslab::util {

/// A parsed CSV field. Unquoted empty fields are null; a quoted empty
/// field ("") is an empty string.
using CsvField = std::optional<std::string>;
using CsvRow = std::vector<CsvField>;

/// Appends `field` to `line`, quoting it when it contains a comma, quote,
/// CR or LF.
void append_csv_field(std::string& line, std::string_view field);

/// RFC 4180 reader: quoted fields may contain commas, doubled quotes and
/// line breaks. Accepts LF and CRLF line endings.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}
  /// Reads the next record; false at end of input. Throws std::runtime_error
  /// on an unterminated quoted field.
  bool next(CsvRow& row);
  std::size_t line() const noexcept { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

std::vector<CsvRow> read_csv_file(const std::filesystem::path& path);

}  // namespace ddoslab::util
