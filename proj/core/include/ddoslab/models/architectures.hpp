#pragma once

#include <cstdint>
#include <string_view>

#include "ddoslab/nn/model.hpp"

namespace ddoslab::models {

enum class ArchName { cnn, fnn };

const char* to_string(ArchName a) noexcept;     // "CNN" / "FNN"
ArchName arch_from_string(std::string_view s);  // case-insensitive; throws ConfigError

/// The features form a length-n, single-channel sequence:
/// Conv(64, k8) > Pool > Conv(32, k16) > Pool > Conv(16, k3) > Pool >
/// Dropout(0.5) > Flatten > Dense(64, ReLU) > Dense(1, sigmoid).
/// All convs use ReLU and SAME padding. Throws ConfigError for n < 1.
std::vector<nn::LayerSpec> cnn_layers(std::size_t n_features);
nn::Model build_cnn(std::size_t n_features, std::uint64_t seed);

/// Dense(64, ReLU) > Dense(32, ReLU) > Dense(1, sigmoid).
std::vector<nn::LayerSpec> fnn_layers(std::size_t n_features);
nn::Model build_fnn(std::size_t n_features, std::uint64_t seed);

nn::Model build(ArchName arch, std::size_t n_features, std::uint64_t seed);

}  // namespace ddoslab::models
