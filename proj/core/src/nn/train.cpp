#include "ddoslab/nn/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ddoslab/error.hpp"

namespace ddoslab::nn {

void TrainConfig::validate() const {
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) throw ConfigError("learning rate must be > 0");
  if (batch_size == 0) throw ConfigError("batch size must be >= 1");
  if (!(threshold > 0.0 && threshold < 1.0)) throw ConfigError("classification threshold must be in (0, 1)");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) throw ConfigError("adam betas must be in [0, 1)");
  if (!(eps > 0.0)) throw ConfigError("adam eps must be > 0");
}

Examples Examples::gather(const std::size_t* idx, std::size_t n) const {
  const std::size_t width = y.empty() ? 0 : x.size() / y.size();
  Examples out{Tensor({n, width}), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    std::copy_n(x.data() + idx[i] * width, width, out.x.data() + i * width);
    out.y[i] = y[idx[i]];
  }
  return out;
}

double compute_gradients(Model& model, const Examples& batch, bool training, Rng* rng) {
  const Tensor p = model.forward(batch.x, training, rng);
  const LossResult bce = bce_loss(p, batch.y);
  const bool fused = model.output_activation() == Activation::sigmoid &&
                     parameter_count(model.layers().back().spec()) != 0;
  if (fused) {
    // d/dz of BCE(sigmoid(z)) collapses to p - y.
    Tensor dz(p.shape());
    const double n = static_cast<double>(batch.size());
    for (std::size_t i = 0; i < dz.size(); ++i) dz[i] = (p[i] - batch.y[i]) / n;
    model.backward(dz, true);
  } else {
    model.backward(bce.grad, false);
  }
  return bce.loss;
}

std::vector<double> predict(const Model& model, const Tensor& x, std::size_t chunk) {
  if (x.rank() < 1) throw ShapeError("predict: input needs a batch dimension");
  const std::size_t n = x.dim(0);
  const std::size_t width = n == 0 ? 0 : x.size() / n;
  std::vector<double> out;
  out.reserve(n);
  chunk = std::max<std::size_t>(chunk, 1);
  for (std::size_t start = 0; start < n; start += chunk) {
    const std::size_t m = std::min(chunk, n - start);
    Tensor part({m, width}, std::vector<double>(x.data() + start * width, x.data() + (start + m) * width));
    const Tensor p = model.infer(part);
    if (p.size() != m) throw ShapeError("predict: model must produce one output per example");
    out.insert(out.end(), p.values().begin(), p.values().end());
  }
  return out;
}

std::vector<int> classify(const std::vector<double>& p, double threshold) {
  std::vector<int> out(p.size());
  std::transform(p.begin(), p.end(), out.begin(), [threshold](double v) { return v >= threshold ? 1 : 0; });
  return out;
}

double mean_bce(const std::vector<double>& p, const std::vector<double>& y) {
  return bce_loss(Tensor({p.size()}, p), y).loss;
}

double accuracy(const std::vector<int>& pred, const std::vector<double>& y) {
  if (pred.empty()) return 0.0;
  std::size_t hit = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) hit += static_cast<double>(pred[i]) == y[i];
  return static_cast<double>(hit) / static_cast<double>(pred.size());
}

History train(Model& model, const Examples& train, const Examples& val, const TrainConfig& cfg,
              const EpochCallback& on_epoch) {
  cfg.validate();
  if (train.size() == 0) throw ConfigError("training set is empty");

  Rng rng(cfg.seed);
  Adam adam(cfg.adam());
  const auto params = model.params();
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  History history;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t m = std::min(cfg.batch_size, order.size() - start);
      const Examples batch = train.gather(order.data() + start, m);
      const double loss = compute_gradients(model, batch, true, &rng);
      if (!std::isfinite(loss)) {
        throw TrainingError("non-finite loss at epoch " + std::to_string(epoch) + ", batch starting at " +
                            std::to_string(start));
      }
      loss_sum += loss * static_cast<double>(m);
      adam.step(params);
    }

    EpochStats s;
    s.epoch = epoch;
    s.train_loss = loss_sum / static_cast<double>(order.size());
    if (val.size() != 0) {
      const auto p = predict(model, val.x);
      s.val_loss = mean_bce(p, val.y);
      s.val_accuracy = accuracy(classify(p, cfg.threshold), val.y);
      if (!std::isfinite(s.val_loss)) throw TrainingError("non-finite validation loss at epoch " + std::to_string(epoch));
    }
    history.push_back(s);
    if (on_epoch) on_epoch(s);
  }
  return history;
}

}  // namespace ddoslab::nn
