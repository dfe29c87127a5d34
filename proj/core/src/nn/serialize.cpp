#include "ddoslab/nn/serialize.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ddoslab/error.hpp"
#include "ddoslab/util/base64.hpp"
#include "ddoslab/util/csv.hpp"
#include "ddoslab/util/numfmt.hpp"

namespace ddoslab::nn {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "ddoslab-model";
constexpr int kVersion = 1;

json spec_to_json(const LayerSpec& s) {
  json j;
  j["type"] = layer_kind(s);
  if (auto* d = std::get_if<DenseSpec>(&s)) {
    j["in"] = d->in;
    j["out"] = d->out;
    j["activation"] = to_string(d->activation);
  } else if (auto* c = std::get_if<Conv1DSpec>(&s)) {
    j["in_channels"] = c->in_channels;
    j["filters"] = c->filters;
    j["kernel"] = c->kernel;
    j["padding"] = "same";
    j["activation"] = to_string(c->activation);
  } else if (auto* p = std::get_if<MaxPool1DSpec>(&s)) {
    j["pool"] = p->pool;
    j["stride"] = p->stride;
  } else if (auto* r = std::get_if<DropoutSpec>(&s)) {
    j["rate"] = r->rate;
  }
  return j;
}

LayerSpec spec_from_json(const json& j) {
  const auto type = j.at("type").get<std::string>();
  if (type == "dense")
    return DenseSpec{j.at("in").get<std::size_t>(), j.at("out").get<std::size_t>(),
                     activation_from_string(j.at("activation").get<std::string>())};
  if (type == "conv1d") {
    if (j.value("padding", "same") != "same") throw SchemaError("only SAME padding is supported");
    return Conv1DSpec{j.at("in_channels").get<std::size_t>(), j.at("filters").get<std::size_t>(),
                      j.at("kernel").get<std::size_t>(), activation_from_string(j.at("activation").get<std::string>())};
  }
  if (type == "maxpool1d") return MaxPool1DSpec{j.at("pool").get<std::size_t>(), j.at("stride").get<std::size_t>()};
  if (type == "dropout") return DropoutSpec{j.at("rate").get<double>()};
  if (type == "flatten") return FlattenSpec{};
  throw SchemaError("unknown layer type '" + type + "'");
}

}  // namespace

std::string model_to_json(const Model& model) {
  json doc;
  doc["format"] = kFormat;
  doc["version"] = kVersion;
  doc["input_shape"] = model.input_shape();
  json layers = json::array();
  for (const Layer& l : model.layers()) {
    json j = spec_to_json(l.spec());
    for (const Param& p : l.params()) j["params"][p.name] = util::encode_f64_le(p.value.values());
    layers.push_back(std::move(j));
  }
  doc["layers"] = std::move(layers);
  return doc.dump(2);
}

Model model_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    if (doc.value("format", "") != kFormat) throw SchemaError("not a ddoslab model document");
    if (doc.value("version", 0) != kVersion) throw SchemaError("unsupported model version");
    std::vector<LayerSpec> specs;
    for (const auto& j : doc.at("layers")) specs.push_back(spec_from_json(j));
    Model model(doc.at("input_shape").get<Shape>(), std::move(specs));

    const auto& layers = doc.at("layers");
    for (std::size_t i = 0; i < model.layers().size(); ++i) {
      for (Param& p : model.layers()[i].params()) {
        auto values = util::decode_f64_le(layers[i].at("params").at(p.name).get<std::string>());
        if (values.size() != p.value.size())
          throw SchemaError("layer " + std::to_string(i) + " " + p.name + ": expected " +
                            std::to_string(p.value.size()) + " values, got " + std::to_string(values.size()));
        p.value = Tensor(p.value.shape(), std::move(values));
        p.grad.fill(0.0);
      }
    }
    return model;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed model JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("malformed model JSON: ") + e.what());
  }
}

void save_model(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out << model_to_json(model) << '\n';
  if (!out) throw IoError(path.string(), "write failed");
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

std::string history_to_csv(const History& h) {
  std::string out = "epoch,train_loss,val_loss,val_accuracy\n";
  for (const EpochStats& s : h) {
    out += std::to_string(s.epoch);
    for (double v : {s.train_loss, s.val_loss, s.val_accuracy}) {
      out += ',';
      util::append_real(out, v);
    }
    out += '\n';
  }
  return out;
}

History history_from_csv(const std::string& text) {
  std::istringstream in(text);
  util::CsvReader reader(in);
  util::CsvRow row;
  if (!reader.next(row) || row.size() != 4) throw SchemaError("history CSV needs a 4-column header");
  History h;
  while (reader.next(row)) {
    if (row.size() == 1 && !row[0]) continue;
    if (row.size() != 4) throw SchemaError("history CSV row with " + std::to_string(row.size()) + " fields");
    std::optional<double> v[4];
    for (int i = 0; i < 4; ++i) {
      v[i] = row[i] ? util::parse_real(*row[i]) : std::nullopt;
      if (!v[i]) throw SchemaError("history CSV has a non-numeric cell");
    }
    h.push_back({static_cast<int>(*v[0]), *v[1], *v[2], *v[3]});
  }
  return h;
}

}  // namespace ddoslab::nn
