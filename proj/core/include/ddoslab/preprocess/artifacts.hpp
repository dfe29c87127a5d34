#pragma once

#include <filesystem>
#include <string>

#include "ddoslab/preprocess/transforms.hpp"

namespace ddoslab::prep {

/// Numeric CSV: feature names then "label" in the header, one row per example.
void write_matrix_csv(const DatasetMatrix& m, const std::filesystem::path& path);
/// Reads a file written by write_matrix_csv. Codebooks are left empty.
DatasetMatrix read_matrix_csv(const std::filesystem::path& path);

std::string scaler_to_json(const ScalerParams& p);
ScalerParams scaler_from_json(const std::string& text);

std::string codebooks_to_json(const Codebooks& books);
Codebooks codebooks_from_json(const std::string& text);

/// Writes train.csv, val.csv, test.csv, scaler.json and codebooks.json into `dir`.
void write_preprocessed(const Preprocessed& p, const std::filesystem::path& dir);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace ddoslab::prep
