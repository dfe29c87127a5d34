#include "ddoslab/nn/ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string_view>

#include "ddoslab/error.hpp"

namespace ddoslab::nn {

const char* to_string(Activation a) noexcept {
  switch (a) {
    case Activation::none: return "none";
    case Activation::relu: return "relu";
    case Activation::sigmoid: return "sigmoid";
  }
  return "none";
}

Activation activation_from_string(std::string_view s) {
  if (s == "none" || s == "linear") return Activation::none;
  if (s == "relu") return Activation::relu;
  if (s == "sigmoid") return Activation::sigmoid;
  throw std::invalid_argument("unknown activation '" + std::string(s) + "'");
}

// -------------------------------------------------------------------- dense

Tensor dense_forward(const Tensor& x, const Tensor& w, const Tensor& b) {
  require_rank(x, 2, "dense input");
  require_rank(w, 2, "dense weights");
  const std::size_t batch = x.dim(0), in = x.dim(1), out = w.dim(1);
  if (w.dim(0) != in) throw ShapeError("dense: input width " + std::to_string(in) + " != weight rows " +
                                       std::to_string(w.dim(0)));
  require_shape(b, {out}, "dense bias");

  Tensor y({batch, out});
  for (std::size_t n = 0; n < batch; ++n) {
    double* yr = &y.at(n, 0);
    std::copy_n(b.data(), out, yr);
    for (std::size_t i = 0; i < in; ++i) {
      const double xv = x.at(n, i);
      const double* wr = &w.at(i, 0);
      for (std::size_t o = 0; o < out; ++o) yr[o] += xv * wr[o];
    }
  }
  return y;
}

DenseGrads dense_backward(const Tensor& x, const Tensor& w, const Tensor& dy) {
  const std::size_t batch = x.dim(0), in = x.dim(1), out = w.dim(1);
  require_shape(dy, {batch, out}, "dense upstream gradient");
  DenseGrads g{Tensor({batch, in}), Tensor({in, out}), Tensor({out})};
  for (std::size_t n = 0; n < batch; ++n) {
    const double* dyr = &dy.at(n, 0);
    for (std::size_t o = 0; o < out; ++o) g.db[o] += dyr[o];
    for (std::size_t i = 0; i < in; ++i) {
      const double xv = x.at(n, i);
      const double* wr = &w.at(i, 0);
      double* dwr = &g.dw.at(i, 0);
      double acc = 0.0;
      for (std::size_t o = 0; o < out; ++o) {
        acc += dyr[o] * wr[o];
        dwr[o] += xv * dyr[o];
      }
      g.dx.at(n, i) = acc;
    }
  }
  return g;
}

// ------------------------------------------------------------------- conv1d

Tensor conv1d_forward(const Tensor& x, const Tensor& k, const Tensor& b) {
  require_rank(x, 3, "conv1d input");
  require_rank(k, 3, "conv1d kernel");
  const std::size_t batch = x.dim(0), len = x.dim(1), ch = x.dim(2);
  const std::size_t ks = k.dim(0), filters = k.dim(2);
  if (k.dim(1) != ch)
    throw ShapeError("conv1d: input has " + std::to_string(ch) + " channels, kernel expects " +
                     std::to_string(k.dim(1)));
  require_shape(b, {filters}, "conv1d bias");
  const auto pad = static_cast<std::ptrdiff_t>(same_pad_left(ks));

  Tensor y({batch, len, filters});
  for (std::size_t n = 0; n < batch; ++n) {
    for (std::size_t t = 0; t < len; ++t) {
      double* yr = &y.at(n, t, 0);
      std::copy_n(b.data(), filters, yr);
      for (std::size_t j = 0; j < ks; ++j) {
        const std::ptrdiff_t s = static_cast<std::ptrdiff_t>(t + j) - pad;
        if (s < 0 || s >= static_cast<std::ptrdiff_t>(len)) continue;
        for (std::size_t c = 0; c < ch; ++c) {
          const double xv = x.at(n, static_cast<std::size_t>(s), c);
          const double* kr = &k.at(j, c, 0);
          for (std::size_t f = 0; f < filters; ++f) yr[f] += xv * kr[f];
        }
      }
    }
  }
  return y;
}

Conv1DGrads conv1d_backward(const Tensor& x, const Tensor& k, const Tensor& dy) {
  const std::size_t batch = x.dim(0), len = x.dim(1), ch = x.dim(2);
  const std::size_t ks = k.dim(0), filters = k.dim(2);
  require_shape(dy, {batch, len, filters}, "conv1d upstream gradient");
  const auto pad = static_cast<std::ptrdiff_t>(same_pad_left(ks));

  Conv1DGrads g{Tensor(x.shape()), Tensor(k.shape()), Tensor({filters})};
  for (std::size_t n = 0; n < batch; ++n) {
    for (std::size_t t = 0; t < len; ++t) {
      const double* dyr = &dy.at(n, t, 0);
      for (std::size_t f = 0; f < filters; ++f) g.db[f] += dyr[f];
      for (std::size_t j = 0; j < ks; ++j) {
        const std::ptrdiff_t s = static_cast<std::ptrdiff_t>(t + j) - pad;
        if (s < 0 || s >= static_cast<std::ptrdiff_t>(len)) continue;
        const auto su = static_cast<std::size_t>(s);
        for (std::size_t c = 0; c < ch; ++c) {
          const double xv = x.at(n, su, c);
          const double* kr = &k.at(j, c, 0);
          double* dkr = &g.dk.at(j, c, 0);
          double acc = 0.0;
          for (std::size_t f = 0; f < filters; ++f) {
            acc += dyr[f] * kr[f];
            dkr[f] += xv * dyr[f];
          }
          g.dx.at(n, su, c) += acc;
        }
      }
    }
  }
  return g;
}

// ------------------------------------------------------------------ maxpool

MaxPoolResult maxpool1d_forward(const Tensor& x) {
  require_rank(x, 3, "maxpool input");
  const std::size_t batch = x.dim(0), len = x.dim(1), ch = x.dim(2);
  if (len == 0) throw ShapeError("maxpool: empty sequence");
  const std::size_t out_len = pooled_length(len);

  MaxPoolResult r{Tensor({batch, out_len, ch}), std::vector<std::uint32_t>(batch * out_len * ch)};
  for (std::size_t n = 0; n < batch; ++n) {
    for (std::size_t t = 0; t < out_len; ++t) {
      const std::size_t a = 2 * t;
      const std::size_t last = std::min(a + 2, len);
      for (std::size_t c = 0; c < ch; ++c) {
        std::size_t best = a;
        for (std::size_t s = a + 1; s < last; ++s)
          if (x.at(n, s, c) > x.at(n, best, c)) best = s;
        r.y.at(n, t, c) = x.at(n, best, c);
        r.argmax[(n * out_len + t) * ch + c] = static_cast<std::uint32_t>(best);
      }
    }
  }
  return r;
}

Tensor maxpool1d_backward(const Shape& x_shape, const std::vector<std::uint32_t>& argmax, const Tensor& dy) {
  const std::size_t batch = x_shape.at(0), len = x_shape.at(1), ch = x_shape.at(2);
  const std::size_t out_len = pooled_length(len);
  require_shape(dy, {batch, out_len, ch}, "maxpool upstream gradient");
  if (argmax.size() != dy.size()) throw ShapeError("maxpool: argmax cache does not match gradient");
  Tensor dx(x_shape);
  for (std::size_t n = 0; n < batch; ++n)
    for (std::size_t t = 0; t < out_len; ++t)
      for (std::size_t c = 0; c < ch; ++c) {
        const std::size_t i = (n * out_len + t) * ch + c;
        dx.at(n, argmax[i], c) += dy[i];
      }
  return dx;
}

// ------------------------------------------------------------------ dropout

std::vector<double> dropout_mask(std::size_t n, double rate, Rng& rng) {
  if (!(rate >= 0.0 && rate < 1.0)) throw std::invalid_argument("dropout rate must be in [0, 1)");
  std::vector<double> mask(n, 1.0);
  if (rate == 0.0) return mask;
  const double keep_scale = 1.0 / (1.0 - rate);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double& m : mask) m = u(rng) < rate ? 0.0 : keep_scale;
  return mask;
}

Tensor apply_mask(const Tensor& x, const std::vector<double>& mask) {
  if (mask.size() != x.size()) throw ShapeError("dropout mask size does not match tensor");
  Tensor y = x;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] *= mask[i];
  return y;
}

Tensor dropout_forward(const Tensor& x, double rate, Rng& rng, bool training, std::vector<double>* mask) {
  if (!(rate >= 0.0 && rate < 1.0)) throw std::invalid_argument("dropout rate must be in [0, 1)");
  if (!training) {
    if (mask) mask->assign(x.size(), 1.0);
    return x;
  }
  auto m = dropout_mask(x.size(), rate, rng);
  Tensor y = apply_mask(x, m);
  if (mask) *mask = std::move(m);
  return y;
}

// -------------------------------------------------------------- activations

double sigmoid(double z) noexcept {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

Tensor activate(const Tensor& z, Activation a) {
  Tensor y = z;
  switch (a) {
    case Activation::none: break;
    case Activation::relu:
      for (double& v : y.values()) v = v > 0.0 ? v : 0.0;
      break;
    case Activation::sigmoid:
      for (double& v : y.values()) v = sigmoid(v);
      break;
  }
  return y;
}

Tensor activation_backward(const Tensor& y, const Tensor& dy, Activation a) {
  require_shape(dy, y.shape(), "activation upstream gradient");
  Tensor dz = dy;
  switch (a) {
    case Activation::none: break;
    case Activation::relu:
      for (std::size_t i = 0; i < dz.size(); ++i)
        if (!(y[i] > 0.0)) dz[i] = 0.0;
      break;
    case Activation::sigmoid:
      for (std::size_t i = 0; i < dz.size(); ++i) dz[i] *= y[i] * (1.0 - y[i]);
      break;
  }
  return dz;
}

// --------------------------------------------------------------------- loss

LossResult bce_loss(const Tensor& pred, const std::vector<double>& y) {
  if (pred.size() != y.size() || y.empty())
    throw ShapeError("bce: " + std::to_string(pred.size()) + " predictions for " + std::to_string(y.size()) +
                     " labels");
  LossResult r{0.0, Tensor(pred.shape())};
  const double n = static_cast<double>(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double p = std::clamp(pred[i], kBceEpsilon, 1.0 - kBceEpsilon);
    r.loss -= y[i] * std::log(p) + (1.0 - y[i]) * std::log(1.0 - p);
    // The clamp is flat outside its range, so the gradient is zero there.
    const bool inside = pred[i] > kBceEpsilon && pred[i] < 1.0 - kBceEpsilon;
    r.grad[i] = inside ? (-y[i] / p + (1.0 - y[i]) / (1.0 - p)) / n : 0.0;
  }
  r.loss /= n;
  return r;
}

}  // namespace ddoslab::nn
