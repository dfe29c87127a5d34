#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ddoslab::util {

std::string base64_encode(std::span<const std::uint8_t> bytes);
/// Throws std::invalid_argument on malformed input.
std::vector<std::uint8_t> base64_decode(std::string_view text);

/// Little-endian IEEE-754 binary64 blob of `values`, base64 encoded.
std::string encode_f64_le(std::span<const double> values);
std::vector<double> decode_f64_le(std::string_view text);

}  // namespace ddoslab::util
