#include "ddoslab/nn/adam.hpp"

#include <cmath>
#include <stdexcept>

#include "ddoslab/error.hpp"

namespace ddoslab::nn {

void adam_update(Tensor& param, const Tensor& grad, Tensor& m, Tensor& v, std::int64_t t, const AdamConfig& cfg) {
  if (t < 1) throw std::invalid_argument("adam step index must be >= 1");
  if (grad.size() != param.size() || m.size() != param.size() || v.size() != param.size())
    throw ShapeError("adam: parameter, gradient and moment sizes differ");
  const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(t));
  const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(t));
  for (std::size_t i = 0; i < param.size(); ++i) {
    const double g = grad[i];
    m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g;
    v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g * g;
    const double m_hat = m[i] / c1;
    const double v_hat = v[i] / c2;
    param[i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.eps);
  }
}

void Adam::step(const std::vector<Param*>& params) {
  if (m_.empty()) {
    for (const Param* p : params) {
      m_.emplace_back(p->value.shape());
      v_.emplace_back(p->value.shape());
    }
  }
  if (params.size() != m_.size()) throw std::logic_error("adam: parameter list changed between steps");
  ++t_;
  for (std::size_t i = 0; i < params.size(); ++i) adam_update(params[i]->value, params[i]->grad, m_[i], v_[i], t_, cfg_);
}

}  // namespace ddoslab::nn
