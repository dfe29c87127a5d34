#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ddoslab/nn/adam.hpp"
#include "ddoslab/nn/model.hpp"

namespace ddoslab::nn {

struct TrainConfig {
  int epochs = 10;
  double learning_rate = 1e-3;
  std::size_t batch_size = 64;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  std::uint64_t seed = 0;
  double threshold = 0.5;

  /// Throws ConfigError.
  void validate() const;
  AdamConfig adam() const { return {learning_rate, beta1, beta2, eps}; }
};

/// Feature rows x [n, n_features] and binary targets.
struct Examples {
  Tensor x;
  std::vector<double> y;

  std::size_t size() const noexcept { return y.size(); }
  /// Rows `idx` as a new batch.
  Examples gather(const std::size_t* idx, std::size_t n) const;
};

struct EpochStats {
  int epoch = 0;  // 1-based
  double train_loss = 0.0;
  double val_loss = 0.0;
  double val_accuracy = 0.0;

  friend bool operator==(const EpochStats&, const EpochStats&) = default;
};

using History = std::vector<EpochStats>;
using EpochCallback = std::function<void(const EpochStats&)>;

/// Loss and gradient for one minibatch; fills every parameter's grad.
/// Uses the fused (p - y) / n logit gradient when the output layer is a
/// sigmoid dense/conv layer.
double compute_gradients(Model& model, const Examples& batch, bool training, Rng* rng);

/// Exactly cfg.epochs passes over seeded-shuffled minibatches with Adam.
/// No early stopping: the returned model state is the last epoch's.
/// `val` may be empty, in which case val metrics are 0. Throws
/// TrainingError on a non-finite loss.
History train(Model& model, const Examples& train, const Examples& val, const TrainConfig& cfg,
              const EpochCallback& on_epoch = {});

/// Probabilities for every row, evaluated in chunks (dropout off).
std::vector<double> predict(const Model& model, const Tensor& x, std::size_t chunk = 1024);
/// p >= threshold -> 1.
std::vector<int> classify(const std::vector<double>& p, double threshold = 0.5);

double mean_bce(const std::vector<double>& p, const std::vector<double>& y);
double accuracy(const std::vector<int>& pred, const std::vector<double>& y);

}  // namespace ddoslab::nn
