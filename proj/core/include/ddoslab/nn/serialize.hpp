#pragma once

#include <filesystem>
#include <string>

#include "ddoslab/nn/model.hpp"
#include "ddoslab/nn/train.hpp"

namespace ddoslab::nn {

/// One JSON document: input shape, layer specs and parameters as base64
/// little-endian float64 blobs. Loading reproduces the model bit for bit.
std::string model_to_json(const Model& model);
/// Throws SchemaError on malformed documents.
Model model_from_json(const std::string& text);

void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

/// CSV with columns epoch, train_loss, val_loss, val_accuracy.
std::string history_to_csv(const History& h);
History history_from_csv(const std::string& text);

}  // namespace ddoslab::nn
