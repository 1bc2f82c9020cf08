// Copyright 2026 The Grasp Forge Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "graspforge/train/config.hpp"

#include <algorithm>

#include "graspforge/errors.hpp"

namespace graspforge::train {

std::string to_string(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::kSynthetic: return "synthetic";
    case DatasetKind::kCornell: return "cornell";
    case DatasetKind::kJacquard: return "jacquard";
    case DatasetKind::kDirectory: return "directory";
  }
  return "unknown";
}

DatasetKind dataset_kind_from_string(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "synthetic") return DatasetKind::kSynthetic;
  if (lower == "cornell") return DatasetKind::kCornell;
  if (lower == "jacquard") return DatasetKind::kJacquard;
  if (lower == "directory" || lower == "dir") return DatasetKind::kDirectory;
  throw InvalidArgument("unknown dataset '" + name + "' (expected synthetic, cornell, jacquard or directory)");
}

void TrainConfig::validate() const {
  model.validate();
  split.validate();
  if (batch_size < 1) throw InvalidArgument("batch_size must be >= 1");
  if (epochs < 1) throw InvalidArgument("epochs must be >= 1");
  if (seeds.empty()) throw InvalidArgument("at least one seed is required");
  if (!(learning_rate >= 0.0)) throw InvalidArgument("learning_rate must be >= 0");
  if (max_steps < 0) throw InvalidArgument("max_steps must be >= 0");
  if (validate_every < 1) throw InvalidArgument("validate_every must be >= 1");
  if (!(w_max >= 0.0)) throw InvalidArgument("w_max must be >= 0");
  if (!(background_weight >= 0.0)) throw InvalidArgument("background_weight must be >= 0");
  if (model.input_channels != dataset::channel_count(modality)) {
    throw ConfigMismatchError("modality " + dataset::to_string(modality) + " needs " +
                              std::to_string(dataset::channel_count(modality)) + " input channels, model has " +
                              std::to_string(model.input_channels));
  }
  if (dataset != DatasetKind::kSynthetic && dataset_path.empty()) {
    throw InvalidArgument("dataset " + to_string(dataset) + " needs a dataset path");
  }
  if (dataset == DatasetKind::kSynthetic && synthetic.train_count == 0) {
    throw InvalidArgument("synthetic train_count must be positive");
  }
}

double TrainConfig::resolved_w_max() const { return w_max > 0.0 ? w_max : 150.0 * model.input_size / 224.0; }

void to_json(nlohmann::json& j, const LossWeights& w) {
  j = {{"quality", w.quality}, {"cos", w.cos}, {"sin", w.sin}, {"width", w.width}};
}

void from_json(const nlohmann::json& j, LossWeights& w) {
  const LossWeights d;
  w.quality = j.value("quality", d.quality);
  w.cos = j.value("cos", d.cos);
  w.sin = j.value("sin", d.sin);
  w.width = j.value("width", d.width);
}

void to_json(nlohmann::json& j, const SyntheticDataConfig& c) {
  j = {{"train_count", c.train_count},
       {"val_count", c.val_count},
       {"seed", c.seed},
       {"min_objects", c.min_objects},
       {"max_objects", c.max_objects}};
}

void from_json(const nlohmann::json& j, SyntheticDataConfig& c) {
  const SyntheticDataConfig d;
  c.train_count = j.value("train_count", d.train_count);
  c.val_count = j.value("val_count", d.val_count);
  c.seed = j.value("seed", d.seed);
  c.min_objects = j.value("min_objects", d.min_objects);
  c.max_objects = j.value("max_objects", d.max_objects);
}

void to_json(nlohmann::json& j, const TrainConfig& c) {
  j = {{"dataset", to_string(c.dataset)},
       {"dataset_path", c.dataset_path},
       {"synthetic", c.synthetic},
       {"modality", dataset::to_string(c.modality)},
       {"learning_rate", c.learning_rate},
       {"batch_size", c.batch_size},
       {"epochs", c.epochs},
       {"max_steps", c.max_steps},
       {"seeds", c.seeds},
       {"split", c.split},
       {"loss_weights", c.loss_weights},
       {"augment", c.augment},
       {"mask_positive_regions", c.mask_positive_regions},
       {"background_weight", c.background_weight},
       {"w_max", c.w_max},
       {"validate_every", c.validate_every},
       {"model", c.model}};
}

void from_json(const nlohmann::json& j, TrainConfig& c) {
  if (j.contains("dataset")) c.dataset = dataset_kind_from_string(j.at("dataset").get<std::string>());
  c.dataset_path = j.value("dataset_path", c.dataset_path);
  if (j.contains("synthetic")) c.synthetic = j.at("synthetic").get<SyntheticDataConfig>();
  if (j.contains("modality")) c.modality = dataset::modality_from_string(j.at("modality").get<std::string>());
  c.learning_rate = j.value("learning_rate", c.learning_rate);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.epochs = j.value("epochs", c.epochs);
  c.max_steps = j.value("max_steps", c.max_steps);
  if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  if (j.contains("split")) c.split = j.at("split").get<dataset::SplitSpec>();
  if (j.contains("loss_weights")) c.loss_weights = j.at("loss_weights").get<LossWeights>();
  c.augment = j.value("augment", c.augment);
  c.mask_positive_regions = j.value("mask_positive_regions", c.mask_positive_regions);
  c.background_weight = j.value("background_weight", c.background_weight);
  c.w_max = j.value("w_max", c.w_max);
  c.validate_every = j.value("validate_every", c.validate_every);
  if (j.contains("model")) c.model = j.at("model").get<model::ModelConfig>();
}

TrainConfig desk_config() {
  TrainConfig c;
  c.dataset = DatasetKind::kSynthetic;
  c.modality = dataset::Modality::kRgbd;
  c.model.input_channels = 4;
  c.model.base_width = 8;
  c.model.num_residual_blocks = 5;
  c.model.input_size = 64;
  c.model.dropout_rate = 0.1;
  c.epochs = 20;
  c.batch_size = 8;
  c.learning_rate = 1e-3;
  c.seeds = {1, 2, 3};
  return c;
}

TrainConfig cornell_config(const std::string& path) {
  TrainConfig c;
  c.dataset = DatasetKind::kCornell;
  c.dataset_path = path;
  c.epochs = 50;
  c.augment = true;
  c.model = model::ModelConfig{};
  return c;
}

}  // namespace graspforge::train
