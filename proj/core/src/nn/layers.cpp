#include "ddoslab/nn/layers.hpp"

#include <cmath>

#include "ddoslab/error.hpp"

namespace ddoslab::nn {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void glorot(Tensor& w, std::size_t fan_in, std::size_t fan_out, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  std::uniform_real_distribution<double> u(-limit, limit);
  for (double& v : w.values()) v = u(rng);
}

Shape batch_of(std::size_t batch, const Shape& per_example) {
  Shape s{batch};
  s.insert(s.end(), per_example.begin(), per_example.end());
  return s;
}

}  // namespace

const char* layer_kind(const LayerSpec& s) noexcept {
  return std::visit(overloaded{[](const DenseSpec&) { return "dense"; },
                               [](const Conv1DSpec&) { return "conv1d"; },
                               [](const MaxPool1DSpec&) { return "maxpool1d"; },
                               [](const DropoutSpec&) { return "dropout"; },
                               [](const FlattenSpec&) { return "flatten"; }},
                    s);
}

void validate(const LayerSpec& s) {
  std::visit(overloaded{
                 [](const DenseSpec& d) {
                   if (d.in == 0 || d.out == 0) throw ConfigError("dense layer needs in >= 1 and out >= 1");
                 },
                 [](const Conv1DSpec& c) {
                   if (c.kernel == 0) throw ConfigError("conv1d kernel must be >= 1");
                   if (c.filters == 0) throw ConfigError("conv1d filters must be >= 1");
                   if (c.in_channels == 0) throw ConfigError("conv1d in_channels must be >= 1");
                 },
                 [](const MaxPool1DSpec& p) {
                   if (p.pool != 2 || p.stride != 2) throw ConfigError("only pool 2 / stride 2 is supported");
                 },
                 [](const DropoutSpec& d) {
                   if (!(d.rate >= 0.0 && d.rate < 1.0)) throw ConfigError("dropout rate must be in [0, 1)");
                 },
                 [](const FlattenSpec&) {}},
             s);
}

Shape output_shape(const LayerSpec& s, const Shape& in) {
  return std::visit(
      overloaded{
          [&](const DenseSpec& d) -> Shape {
            if (in.size() != 1 || in[0] != d.in)
              throw ShapeError("dense expects [" + std::to_string(d.in) + "], got " + shape_string(in));
            return {d.out};
          },
          [&](const Conv1DSpec& c) -> Shape {
            if (in.size() != 2 || in[1] != c.in_channels || in[0] == 0)
              throw ShapeError("conv1d expects [length, " + std::to_string(c.in_channels) + "], got " +
                               shape_string(in));
            return {in[0], c.filters};
          },
          [&](const MaxPool1DSpec&) -> Shape {
            if (in.size() != 2 || in[0] == 0) throw ShapeError("maxpool1d expects [length, ch], got " + shape_string(in));
            return {pooled_length(in[0]), in[1]};
          },
          [&](const DropoutSpec&) -> Shape { return in; },
          [&](const FlattenSpec&) -> Shape { return {shape_size(in)}; }},
      s);
}

std::size_t parameter_count(const LayerSpec& s) noexcept {
  return std::visit(overloaded{[](const DenseSpec& d) { return d.in * d.out + d.out; },
                               [](const Conv1DSpec& c) { return c.kernel * c.in_channels * c.filters + c.filters; },
                               [](const auto&) { return std::size_t{0}; }},
                    s);
}

// -------------------------------------------------------------------- Layer

Layer::Layer(LayerSpec spec) : spec_(spec) {
  validate(spec_);
  if (auto* d = std::get_if<DenseSpec>(&spec_)) {
    params_.push_back({"weights", Tensor({d->in, d->out}), Tensor({d->in, d->out})});
    params_.push_back({"bias", Tensor({d->out}), Tensor({d->out})});
  } else if (auto* c = std::get_if<Conv1DSpec>(&spec_)) {
    const Shape k{c->kernel, c->in_channels, c->filters};
    params_.push_back({"kernel", Tensor(k), Tensor(k)});
    params_.push_back({"bias", Tensor({c->filters}), Tensor({c->filters})});
  }
}

void Layer::init(Rng& rng) {
  if (auto* d = std::get_if<DenseSpec>(&spec_)) {
    glorot(params_[0].value, d->in, d->out, rng);
  } else if (auto* c = std::get_if<Conv1DSpec>(&spec_)) {
    glorot(params_[0].value, c->kernel * c->in_channels, c->kernel * c->filters, rng);
  }
  for (auto& p : params_) {
    if (p.name == "bias") p.value.fill(0.0);
    p.grad.fill(0.0);
  }
}

Tensor Layer::run(const Tensor& x, bool training, Rng* rng, Cache* cache) const {
  if (x.rank() < 2) throw ShapeError(std::string(layer_kind(spec_)) + ": input needs a batch dimension");
  const Shape per_example(x.shape().begin() + 1, x.shape().end());
  output_shape(spec_, per_example);  // shape check

  Tensor y = std::visit(
      overloaded{
          [&](const DenseSpec& d) { return activate(dense_forward(x, params_[0].value, params_[1].value), d.activation); },
          [&](const Conv1DSpec& c) {
            return activate(conv1d_forward(x, params_[0].value, params_[1].value), c.activation);
          },
          [&](const MaxPool1DSpec&) {
            auto r = maxpool1d_forward(x);
            if (cache) cache->argmax = std::move(r.argmax);
            return std::move(r.y);
          },
          [&](const DropoutSpec& d) {
            if (training && d.rate > 0.0) {
              if (!rng) throw std::invalid_argument("dropout in training mode needs an rng");
              std::vector<double> m = nn::dropout_mask(x.size(), d.rate, *rng);
              Tensor out = apply_mask(x, m);
              if (cache) cache->mask = std::move(m);
              return out;
            }
            if (cache) cache->mask.assign(x.size(), 1.0);
            return x;
          },
          [&](const FlattenSpec&) { return x.reshaped(batch_of(x.dim(0), {shape_size(per_example)})); }},
      spec_);

  if (cache) {
    cache->input = x;
    cache->output = y;
  }
  return y;
}

Tensor Layer::forward(const Tensor& x, bool training, Rng* rng) { return run(x, training, rng, &cache_); }

Tensor Layer::infer(const Tensor& x) const { return run(x, false, nullptr, nullptr); }

Tensor Layer::backward(const Tensor& dy, bool from_preactivation) {
  if (cache_.input.empty() && cache_.output.empty()) throw std::logic_error("backward called before forward");
  require_shape(dy, cache_.output.shape(), "layer upstream gradient");
  return std::visit(
      overloaded{
          [&](const DenseSpec& d) {
            const Tensor dz = from_preactivation ? dy : activation_backward(cache_.output, dy, d.activation);
            DenseGrads g = dense_backward(cache_.input, params_[0].value, dz);
            params_[0].grad = std::move(g.dw);
            params_[1].grad = std::move(g.db);
            return std::move(g.dx);
          },
          [&](const Conv1DSpec& c) {
            const Tensor dz = from_preactivation ? dy : activation_backward(cache_.output, dy, c.activation);
            Conv1DGrads g = conv1d_backward(cache_.input, params_[0].value, dz);
            params_[0].grad = std::move(g.dk);
            params_[1].grad = std::move(g.db);
            return std::move(g.dx);
          },
          [&](const MaxPool1DSpec&) { return maxpool1d_backward(cache_.input.shape(), cache_.argmax, dy); },
          [&](const DropoutSpec&) { return apply_mask(dy, cache_.mask); },
          [&](const FlattenSpec&) { return dy.reshaped(cache_.input.shape()); }},
      spec_);
}

}  // namespace ddoslab::nn
