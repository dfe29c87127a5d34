#include "ddoslab/nn/model.hpp"

#include "ddoslab/error.hpp"

namespace ddoslab::nn {

Model::Model(Shape input_shape, std::vector<LayerSpec> specs) : input_shape_(std::move(input_shape)) {
  if (input_shape_.empty() || shape_size(input_shape_) == 0) throw ShapeError("model input shape must be non-empty");
  if (specs.empty()) throw ShapeError("model needs at least one layer");
  shapes_.push_back(input_shape_);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    try {
      shapes_.push_back(nn::output_shape(specs[i], shapes_.back()));
    } catch (const ShapeError& e) {
      throw ShapeError("layer " + std::to_string(i) + " (" + layer_kind(specs[i]) + "): " + e.what());
    }
    layers_.emplace_back(specs[i]);
  }
}

void Model::init(std::uint64_t seed) {
  Rng rng(seed);
  for (Layer& l : layers_) l.init(rng);
}

std::vector<LayerSpec> Model::specs() const {
  std::vector<LayerSpec> out;
  for (const Layer& l : layers_) out.push_back(l.spec());
  return out;
}

std::size_t Model::parameter_count() const noexcept {
  std::size_t n = 0;
  for (const Layer& l : layers_) n += nn::parameter_count(l.spec());
  return n;
}

Activation Model::output_activation() const noexcept {
  for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
    if (auto* d = std::get_if<DenseSpec>(&it->spec())) return d->activation;
    if (auto* c = std::get_if<Conv1DSpec>(&it->spec())) return c->activation;
  }
  return Activation::none;
}

Tensor Model::as_input(const Tensor& x) const {
  if (x.rank() < 1 || x.dim(0) == 0) throw ShapeError("model input needs a non-empty batch dimension");
  const std::size_t batch = x.dim(0);
  if (x.size() != batch * shape_size(input_shape_))
    throw ShapeError("model input " + shape_string(x.shape()) + " does not match per-example shape " +
                     shape_string(input_shape_));
  Shape s{batch};
  s.insert(s.end(), input_shape_.begin(), input_shape_.end());
  return x.shape() == s ? x : x.reshaped(std::move(s));
}

Tensor Model::forward(const Tensor& x, bool training, Rng* rng) {
  Tensor h = as_input(x);
  for (Layer& l : layers_) h = l.forward(h, training, rng);
  return h;
}

Tensor Model::infer(const Tensor& x) const {
  Tensor h = as_input(x);
  for (const Layer& l : layers_) h = l.infer(h);
  return h;
}

void Model::backward(const Tensor& dout, bool from_logits) {
  if (layers_.empty()) throw std::logic_error("backward on an empty model");
  if (from_logits && nn::parameter_count(layers_.back().spec()) == 0)
    throw std::logic_error("logit gradient needs a dense or conv output layer");
  Tensor g = dout;
  for (std::size_t i = layers_.size(); i-- > 0;) g = layers_[i].backward(g, from_logits && i + 1 == layers_.size());
}

std::vector<Param*> Model::params() {
  std::vector<Param*> out;
  for (Layer& l : layers_)
    for (Param& p : l.params()) out.push_back(&p);
  return out;
}

std::vector<const Param*> Model::params() const {
  std::vector<const Param*> out;
  for (const Layer& l : layers_)
    for (const Param& p : l.params()) out.push_back(&p);
  return out;
}

}  // namespace ddoslab::nn
