#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "ddoslab/simcore/types.hpp"
#include "ddoslab/telemetry/stat_record.hpp"

namespace ddoslab::telemetry {

/// "sumweights,type,...,binvalues,label"
std::string csv_header();

/// One CSV line (without newline). Nulls are empty fields, reals use the
/// shortest round-trip form, strings with commas or quotes are quoted.
std::string csv_row(const StatRecord& record);

void write_csv(std::span<const StatRecord> records, std::ostream& out);

/// Throws std::invalid_argument when `records` is empty and IoError when
/// the file cannot be written.
void export_csv(std::span<const StatRecord> records, const std::filesystem::path& path);

/// "<scenario>_<seed>.csv"
std::string run_file_name(sim::Scenario scenario, std::uint64_t seed);

}  // namespace ddoslab::telemetry
