#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ddoslab/nn/ops.hpp"
#include "ddoslab/nn/tensor.hpp"

namespace ddoslab::nn {

struct DenseSpec {
  std::size_t in = 0, out = 0;
  Activation activation = Activation::none;
  friend bool operator==(const DenseSpec&, const DenseSpec&) = default;
};

/// Stride 1, SAME zero padding. Input/output layout [length, channels].
struct Conv1DSpec {
  std::size_t in_channels = 1, filters = 1, kernel = 1;
  Activation activation = Activation::none;
  friend bool operator==(const Conv1DSpec&, const Conv1DSpec&) = default;
};

struct MaxPool1DSpec {
  std::size_t pool = 2, stride = 2;
  friend bool operator==(const MaxPool1DSpec&, const MaxPool1DSpec&) = default;
};

struct DropoutSpec {
  double rate = 0.5;
  friend bool operator==(const DropoutSpec&, const DropoutSpec&) = default;
};

struct FlattenSpec {
  friend bool operator==(const FlattenSpec&, const FlattenSpec&) = default;
};

using LayerSpec = std::variant<DenseSpec, Conv1DSpec, MaxPool1DSpec, DropoutSpec, FlattenSpec>;

const char* layer_kind(const LayerSpec& s) noexcept;
/// Throws ConfigError for kernel/filters/units of 0, a dropout rate outside
/// [0, 1), or a pool other than 2/2.
void validate(const LayerSpec& s);
/// Per-example output shape (no batch dimension). Throws ShapeError.
Shape output_shape(const LayerSpec& s, const Shape& in);
std::size_t parameter_count(const LayerSpec& s) noexcept;

struct Param {
  std::string name;
  Tensor value;
  Tensor grad;
};

/// One layer with its parameters and the forward-pass cache used by backward.
class Layer {
 public:
  explicit Layer(LayerSpec spec);

  const LayerSpec& spec() const noexcept { return spec_; }

  /// Glorot-uniform weights, zero biases.
  void init(Rng& rng);

  /// Batched forward pass; caches what backward needs. `rng` is required
  /// for dropout in training mode.
  Tensor forward(const Tensor& x, bool training, Rng* rng);
  /// Side-effect free inference pass (dropout off).
  Tensor infer(const Tensor& x) const;

  /// Given d loss / d output, stores parameter gradients and returns
  /// d loss / d input. With `from_preactivation`, `dy` is taken as the
  /// gradient wrt the pre-activation and the activation is skipped.
  Tensor backward(const Tensor& dy, bool from_preactivation = false);

  std::vector<Param>& params() noexcept { return params_; }
  const std::vector<Param>& params() const noexcept { return params_; }

  /// Mask drawn by the last training-mode dropout forward.
  const std::vector<double>& dropout_mask() const noexcept { return cache_.mask; }

 private:
  struct Cache {
    Tensor input, output;
    std::vector<std::uint32_t> argmax;
    std::vector<double> mask;
  };

  Tensor run(const Tensor& x, bool training, Rng* rng, Cache* cache) const;

  LayerSpec spec_;
  std::vector<Param> params_;  // [weights, bias] for dense/conv
  Cache cache_;
};

}  // namespace ddoslab::nn
