#pragma once

#include <functional>

#include "ddoslab/nn/model.hpp"
#include "ddoslab/nn/train.hpp"

namespace ddoslab::nn {

/// |a - n| / max(|a|, |n|), or 0 when both are exactly 0.
double relative_error(double analytic, double numeric) noexcept;

struct GradTolerance {
  double rel = 1e-4;
  /// Below this magnitude on both sides, the relative error is meaningless
  /// noise and `abs` is checked instead.
  double tiny = 1e-7;
  double abs = 1e-9;
};

bool gradients_agree(double analytic, double numeric, const GradTolerance& tol = {}) noexcept;

/// Central differences (f(x+h) - f(x-h)) / 2h for every element of `x`.
/// `f` must read `x` by reference; `x` is restored afterwards.
Tensor numeric_gradient(const std::function<double()>& f, Tensor& x, double h = 1e-6);

struct GradCheckReport {
  std::size_t checked = 0;
  std::size_t failed = 0;
  double max_rel_error = 0.0;

  bool ok() const noexcept { return checked > 0 && failed == 0; }
  void add(double analytic, double numeric, const GradTolerance& tol);
};

GradCheckReport compare(const Tensor& analytic, const Tensor& numeric, const GradTolerance& tol = {});

/// Checks every parameter gradient of the training loss (BCE, dropout in
/// inference mode) against central differences.
GradCheckReport check_model_gradients(Model& model, const Examples& batch, double h = 1e-6,
                                      const GradTolerance& tol = {});

}  // namespace ddoslab::nn
