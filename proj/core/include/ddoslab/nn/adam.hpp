#pragma once

#include <cstdint>
#include <vector>

#include "ddoslab/nn/layers.hpp"

namespace ddoslab::nn {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// One bias-corrected Adam update of `param` at step `t` (t >= 1).
void adam_update(Tensor& param, const Tensor& grad, Tensor& m, Tensor& v, std::int64_t t, const AdamConfig& cfg);

/// Adam with moment state per parameter, created on the first step.
class Adam {
 public:
  explicit Adam(AdamConfig cfg = {}) : cfg_(cfg) {}

  /// Applies each param's current grad. The parameter list must stay the
  /// same (same order and shapes) across calls.
  void step(const std::vector<Param*>& params);

  std::int64_t steps() const noexcept { return t_; }
  const AdamConfig& config() const noexcept { return cfg_; }

 private:
  AdamConfig cfg_;
  std::int64_t t_ = 0;
  std::vector<Tensor> m_, v_;
};

}  // namespace ddoslab::nn
