#include "ddoslab/util/csv.hpp"

#include <fstream>
#include <istream>
#include <stdexcept>

#include "ddoslab/error.hpp"

namespace ddoslab::util {

void append_csv_field(std::string& line, std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    line.append(field);
    return;
  }
  line.push_back('"');
  for (char c : field) {
    if (c == '"') line.push_back('"');
    line.push_back(c);
  }
  line.push_back('"');
}

bool CsvReader::next(CsvRow& row) {
  row.clear();
  int c = in_.get();
  if (c == std::char_traits<char>::eof()) return false;
  ++line_;

  std::string field;
  bool quoted = false;
  bool any = false;
  auto flush = [&] {
    if (quoted || !field.empty()) {
      row.emplace_back(std::move(field));
    } else {
      row.emplace_back(std::nullopt);
    }
    field.clear();
    quoted = false;
  };

  for (;; c = in_.get()) {
    if (c == std::char_traits<char>::eof() || c == '\n') {
      if (!field.empty() && field.back() == '\r' && !quoted) field.pop_back();
      if (any || !field.empty() || quoted || !row.empty()) flush();
      return true;
    }
    any = true;
    if (c == '"' && field.empty() && !quoted) {
      quoted = true;
      for (;;) {
        int q = in_.get();
        if (q == std::char_traits<char>::eof())
          throw std::runtime_error("unterminated quoted CSV field at line " + std::to_string(line_));
        if (q == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field.push_back('"');
            continue;
          }
          break;
        }
        if (q == '\n') ++line_;
        field.push_back(static_cast<char>(q));
      }
      continue;
    }
    if (c == ',') {
      flush();
      continue;
    }
    if (c == '\r' && in_.peek() == '\n') continue;
    field.push_back(static_cast<char>(c));
  }
}

std::vector<CsvRow> read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open for reading");
  CsvReader reader(in);
  std::vector<CsvRow> rows;
  CsvRow row;
  try {
    while (reader.next(row)) rows.push_back(row);
  } catch (const std::runtime_error& e) {
    throw IoError(path.string(), e.what());
  }
  return rows;
}

}  // namespace ddoslab::util
