#include "ddoslab/preprocess/artifacts.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ddoslab/error.hpp"
#include "ddoslab/util/csv.hpp"
#include "ddoslab/util/numfmt.hpp"

namespace ddoslab::prep {

using nlohmann::json;

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out << text;
  out.flush();
  if (!out) throw IoError(path.string(), "write failed");
}

void write_matrix_csv(const DatasetMatrix& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  std::string line;
  for (const auto& name : m.feature_names) {
    util::append_csv_field(line, name);
    line += ',';
  }
  line += telemetry::kLabelColumn;
  out << line << '\n';
  for (std::size_t r = 0; r < m.n_rows; ++r) {
    line.clear();
    for (std::size_t c = 0; c < m.n_features(); ++c) {
      util::append_real(line, m.at(r, c));
      line += ',';
    }
    line += std::to_string(m.labels[r]);
    out << line << '\n';
  }
  out.flush();
  if (!out) throw IoError(path.string(), "write failed");
}

DatasetMatrix read_matrix_csv(const std::filesystem::path& path) {
  const auto rows = util::read_csv_file(path);
  if (rows.empty()) throw SchemaError(path.string() + ": empty file, no header");
  const auto& header = rows.front();
  if (header.size() < 2 || !header.back() || *header.back() != telemetry::kLabelColumn)
    throw SchemaError(path.string() + ": last column must be '" + std::string(telemetry::kLabelColumn) + "'");

  DatasetMatrix m;
  for (std::size_t c = 0; c + 1 < header.size(); ++c) m.feature_names.push_back(header[c].value_or(""));
  const std::size_t nf = m.n_features();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() == 1 && !row[0]) continue;
    if (row.size() != nf + 1) throw SchemaError(path.string() + ": row " + std::to_string(i) + " has wrong width");
    for (std::size_t c = 0; c <= nf; ++c) {
      auto v = row[c] ? util::parse_real(*row[c]) : std::nullopt;
      if (!v) throw SchemaError(path.string() + ": row " + std::to_string(i) + " has a non-numeric cell");
      if (c < nf) {
        m.features.push_back(*v);
      } else {
        if (*v != 0.0 && *v != 1.0) throw SchemaError(path.string() + ": label must be 0 or 1");
        m.labels.push_back(static_cast<int>(*v));
      }
    }
    ++m.n_rows;
  }
  return m;
}

std::string scaler_to_json(const ScalerParams& p) {
  json j;
  j["features"] = p.feature_names;
  j["min"] = p.min;
  j["max"] = p.max;
  return j.dump(2);
}

ScalerParams scaler_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    ScalerParams p;
    p.feature_names = j.at("features").get<std::vector<std::string>>();
    p.min = j.at("min").get<std::vector<double>>();
    p.max = j.at("max").get<std::vector<double>>();
    if (p.min.size() != p.feature_names.size() || p.max.size() != p.feature_names.size())
      throw SchemaError("scaler min/max length does not match feature count");
    for (std::size_t i = 0; i < p.min.size(); ++i)
      if (p.min[i] > p.max[i]) throw SchemaError("scaler min exceeds max for '" + p.feature_names[i] + "'");
    return p;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed scaler JSON: ") + e.what());
  }
}

std::string codebooks_to_json(const Codebooks& books) {
  json j = json::object();
  for (const auto& [column, book] : books) j[column] = book.categories();
  return j.dump(2);
}

Codebooks codebooks_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    Codebooks out;
    for (const auto& [column, cats] : j.items()) {
      Codebook& book = out[column];
      for (const auto& c : cats) book.learn(c.get<std::string>());
    }
    return out;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed codebooks JSON: ") + e.what());
  }
}

void write_preprocessed(const Preprocessed& p, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_matrix_csv(p.split.train, dir / "train.csv");
  write_matrix_csv(p.split.val, dir / "val.csv");
  write_matrix_csv(p.split.test, dir / "test.csv");
  write_text_file(dir / "scaler.json", scaler_to_json(p.scaler) + "\n");
  write_text_file(dir / "codebooks.json", codebooks_to_json(p.codebooks) + "\n");
}

}  // namespace ddoslab::prep
