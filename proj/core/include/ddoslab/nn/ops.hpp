#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ddoslab/nn/tensor.hpp"

namespace ddoslab::nn {

using Rng = std::mt19937_64;

enum class Activation { none, relu, sigmoid };

const char* to_string(Activation a) noexcept;
/// Throws std::invalid_argument on an unknown name.
Activation activation_from_string(std::string_view s);

// Stateless forward/backward kernels. Backward functions take the upstream
// gradient `dy` and return gradients for the inputs and parameters.

/// y = x W + b for x [batch, in], W [in, out], b [out].
Tensor dense_forward(const Tensor& x, const Tensor& w, const Tensor& b);

struct DenseGrads {
  Tensor dx, dw, db;
};
DenseGrads dense_backward(const Tensor& x, const Tensor& w, const Tensor& dy);

/// Left zero-padding of a stride-1 SAME convolution.
constexpr std::size_t same_pad_left(std::size_t kernel) noexcept { return (kernel - 1) / 2; }

/// x [batch, length, in_ch], k [kernel, in_ch, filters], b [filters]
/// -> y [batch, length, filters] with
/// y[t, f] = b[f] + sum_{j, c} x[t + j - pad_left, c] * k[j, c, f].
Tensor conv1d_forward(const Tensor& x, const Tensor& k, const Tensor& b);

struct Conv1DGrads {
  Tensor dx, dk, db;
};
Conv1DGrads conv1d_backward(const Tensor& x, const Tensor& k, const Tensor& dy);

/// Window 2, stride 2; an odd tail forms a singleton window.
struct MaxPoolResult {
  Tensor y;
  std::vector<std::uint32_t> argmax;  // input position per output cell
};
MaxPoolResult maxpool1d_forward(const Tensor& x);
Tensor maxpool1d_backward(const Shape& x_shape, const std::vector<std::uint32_t>& argmax, const Tensor& dy);

constexpr std::size_t pooled_length(std::size_t length) noexcept { return (length + 1) / 2; }

/// Inverted dropout mask: each entry is 0 with probability `rate`,
/// otherwise 1/(1-rate).
std::vector<double> dropout_mask(std::size_t n, double rate, Rng& rng);
/// Training applies a freshly drawn mask (returned through `mask`);
/// inference returns `x` unchanged.
Tensor dropout_forward(const Tensor& x, double rate, Rng& rng, bool training, std::vector<double>* mask = nullptr);
Tensor apply_mask(const Tensor& x, const std::vector<double>& mask);

double sigmoid(double z) noexcept;
Tensor activate(const Tensor& z, Activation a);
/// Gradient wrt the pre-activation, given the activation output `y`.
Tensor activation_backward(const Tensor& y, const Tensor& dy, Activation a);

inline constexpr double kBceEpsilon = 1e-7;

struct LossResult {
  double loss = 0.0;
  Tensor grad;  // d loss / d pred, same shape as pred
};

/// Mean binary cross-entropy with predictions clamped to [eps, 1 - eps].
LossResult bce_loss(const Tensor& pred, const std::vector<double>& y);

}  // namespace ddoslab::nn
