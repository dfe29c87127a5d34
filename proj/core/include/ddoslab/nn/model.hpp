#pragma once

#include <cstdint>
#include <vector>

#include "ddoslab/nn/layers.hpp"

namespace ddoslab::nn {

/// A feed-forward stack of layers over a fixed per-example input shape.
class Model {
 public:
  Model() = default;
  /// Throws ShapeError when the layers do not compose over `input_shape`.
  Model(Shape input_shape, std::vector<LayerSpec> specs);

  /// Re-initializes every parameter from `seed`.
  void init(std::uint64_t seed);

  const Shape& input_shape() const noexcept { return input_shape_; }
  const Shape& output_shape() const noexcept { return shapes_.back(); }
  /// shapes()[0] is the input; shapes()[i + 1] is layer i's output.
  const std::vector<Shape>& shapes() const noexcept { return shapes_; }
  std::vector<LayerSpec> specs() const;
  std::size_t parameter_count() const noexcept;

  std::vector<Layer>& layers() noexcept { return layers_; }
  const std::vector<Layer>& layers() const noexcept { return layers_; }

  /// Activation of the last parametric layer.
  Activation output_activation() const noexcept;

  /// `x` is [batch, ...] with the trailing dimensions holding
  /// product(input_shape()) values; it is reshaped as needed.
  Tensor forward(const Tensor& x, bool training, Rng* rng);
  /// Dropout off, no caching. Safe to call concurrently.
  Tensor infer(const Tensor& x) const;

  /// Backpropagates d loss / d output through every layer, filling each
  /// parameter's grad. With `from_logits`, `dout` is the gradient wrt the
  /// output layer's pre-activation.
  void backward(const Tensor& dout, bool from_logits = false);

  std::vector<Param*> params();
  std::vector<const Param*> params() const;

 private:
  Tensor as_input(const Tensor& x) const;

  Shape input_shape_;
  std::vector<Shape> shapes_;
  std::vector<Layer> layers_;
};

}  // namespace ddoslab::nn
