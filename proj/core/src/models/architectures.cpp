#include "ddoslab/models/architectures.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "ddoslab/error.hpp"

namespace ddoslab::models {

using nn::Activation;

namespace {

void require_features(std::size_t n) {
  if (n < 1) throw ConfigError("a model needs at least one input feature");
}

}  // namespace

const char* to_string(ArchName a) noexcept { return a == ArchName::cnn ? "CNN" : "FNN"; }

ArchName arch_from_string(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "cnn") return ArchName::cnn;
  if (lower == "fnn") return ArchName::fnn;
  throw ConfigError("unknown model '" + std::string(s) + "' (expected cnn or fnn)");
}

std::vector<nn::LayerSpec> cnn_layers(std::size_t n_features) {
  require_features(n_features);
  // Shapes for n = 6: [6,1] -> [6,64] -> [3,64] -> [3,32] -> [2,32] -> [2,16] -> [1,16] -> 16 -> 64 -> 1
  return {
      nn::Conv1DSpec{1, 64, 8, Activation::relu},
      nn::MaxPool1DSpec{},
      nn::Conv1DSpec{64, 32, 16, Activation::relu},
      nn::MaxPool1DSpec{},
      nn::Conv1DSpec{32, 16, 3, Activation::relu},
      nn::MaxPool1DSpec{},
      nn::DropoutSpec{0.5},
      nn::FlattenSpec{},
      nn::DenseSpec{16 * nn::pooled_length(nn::pooled_length(nn::pooled_length(n_features))), 64, Activation::relu},
      nn::DenseSpec{64, 1, Activation::sigmoid},
  };
}

nn::Model build_cnn(std::size_t n_features, std::uint64_t seed) {
  nn::Model m({n_features, 1}, cnn_layers(n_features));
  m.init(seed);
  return m;
}

std::vector<nn::LayerSpec> fnn_layers(std::size_t n_features) {
  require_features(n_features);
  return {
      nn::DenseSpec{n_features, 64, Activation::relu},
      nn::DenseSpec{64, 32, Activation::relu},
      nn::DenseSpec{32, 1, Activation::sigmoid},
  };
}

nn::Model build_fnn(std::size_t n_features, std::uint64_t seed) {
  nn::Model m({n_features}, fnn_layers(n_features));
  m.init(seed);
  return m;
}

nn::Model build(ArchName arch, std::size_t n_features, std::uint64_t seed) {
  return arch == ArchName::cnn ? build_cnn(n_features, seed) : build_fnn(n_features, seed);
}

}  // namespace ddoslab::models
