#pragma once

// Finite-difference check of one layer: every input and parameter gradient
// of the scalar <r, layer(x)> for a random projection r.

#include <numeric>

#include "ddoslab/nn/gradcheck.hpp"
#include "ddoslab/nn/layers.hpp"
#include "gen.hpp"

namespace testgen {

inline double dot(const ddoslab::nn::Tensor& a, const ddoslab::nn::Tensor& b) {
  return std::inner_product(a.values().begin(), a.values().end(), b.values().begin(), 0.0);
}

/// Dropout layers are checked in training mode with the mask drawn once;
/// the FD side reapplies that mask so both sides see the same function.
inline ddoslab::nn::GradCheckReport check_layer(ddoslab::nn::Layer& layer, ddoslab::nn::Tensor x, Rng& rng,
                                                const ddoslab::nn::GradTolerance& tol = {1e-4, 1e-7, 1e-8}) {
  using namespace ddoslab::nn;
  const bool dropout = std::holds_alternative<DropoutSpec>(layer.spec());
  ddoslab::nn::Rng mask_rng(rng());
  const Tensor y = layer.forward(x, dropout, &mask_rng);
  const Tensor r = tensor(rng, y.shape());
  const Tensor dx = layer.backward(r);
  auto f = [&] { return dot(r, dropout ? apply_mask(x, layer.dropout_mask()) : layer.infer(x)); };
  GradCheckReport rep;
  const Tensor ndx = numeric_gradient(f, x);
  for (std::size_t i = 0; i < dx.size(); ++i) rep.add(dx[i], ndx[i], tol);
  for (Param& p : layer.params()) {
    const Tensor g = p.grad;
    const Tensor ng = numeric_gradient(f, p.value);
    for (std::size_t i = 0; i < g.size(); ++i) rep.add(g[i], ng[i], tol);
  }
  return rep;
}

}  // namespace testgen
