#include "ddoslab/nn/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "ddoslab/error.hpp"

namespace ddoslab::nn {

double relative_error(double analytic, double numeric) noexcept {
  const double scale = std::max(std::abs(analytic), std::abs(numeric));
  return scale == 0.0 ? 0.0 : std::abs(analytic - numeric) / scale;
}

bool gradients_agree(double analytic, double numeric, const GradTolerance& tol) noexcept {
  if (std::abs(analytic) < tol.tiny && std::abs(numeric) < tol.tiny) return std::abs(analytic - numeric) < tol.abs;
  return relative_error(analytic, numeric) <= tol.rel;
}

Tensor numeric_gradient(const std::function<double()>& f, Tensor& x, double h) {
  Tensor g(x.shape());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double orig = x[i];
    x[i] = orig + h;
    const double up = f();
    x[i] = orig - h;
    const double down = f();
    x[i] = orig;
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

void GradCheckReport::add(double analytic, double numeric, const GradTolerance& tol) {
  ++checked;
  if (!gradients_agree(analytic, numeric, tol)) ++failed;
  if (std::abs(analytic) >= tol.tiny || std::abs(numeric) >= tol.tiny)
    max_rel_error = std::max(max_rel_error, relative_error(analytic, numeric));
}

GradCheckReport compare(const Tensor& analytic, const Tensor& numeric, const GradTolerance& tol) {
  if (analytic.shape() != numeric.shape()) throw ShapeError("gradient shapes differ");
  GradCheckReport r;
  for (std::size_t i = 0; i < analytic.size(); ++i) r.add(analytic[i], numeric[i], tol);
  return r;
}

GradCheckReport check_model_gradients(Model& model, const Examples& batch, double h, const GradTolerance& tol) {
  compute_gradients(model, batch, false, nullptr);
  std::vector<Tensor> analytic;
  for (const Param* p : model.params()) analytic.push_back(p->grad);

  auto loss = [&] { return bce_loss(model.infer(batch.x), batch.y).loss; };
  GradCheckReport report;
  const auto params = model.params();
  for (std::size_t i = 0; i < params.size(); ++i) {
    const Tensor numeric = numeric_gradient(loss, params[i]->value, h);
    for (std::size_t k = 0; k < numeric.size(); ++k) report.add(analytic[i][k], numeric[k], tol);
  }
  return report;
}

}  // namespace ddoslab::nn
