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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graspforge/dataset/sample.hpp"
#include "graspforge/dataset/splits.hpp"
#include "graspforge/model/grconvnet.hpp"

namespace graspforge::train {

/// Weights of the quality, cos, sin and width loss terms.
struct LossWeights {
  double quality = 1.0;
  double cos = 1.0;
  double sin = 1.0;
  double width = 1.0;

  bool operator==(const LossWeights&) const = default;
};

/// Where training samples come from. Synthetic data is generated in memory
/// (train and validation sets from distinct seeds); the other kinds read
/// `dataset_path` and use `split`.
enum class DatasetKind { kSynthetic, kCornell, kJacquard, kDirectory };

std::string to_string(DatasetKind kind);
DatasetKind dataset_kind_from_string(const std::string& name);

struct SyntheticDataConfig {
  std::size_t train_count = 512;
  std::size_t val_count = 128;
  std::uint64_t seed = 2024;
  int min_objects = 1;
  int max_objects = 3;

  bool operator==(const SyntheticDataConfig&) const = default;
};

struct TrainConfig {
  DatasetKind dataset = DatasetKind::kSynthetic;
  std::string dataset_path;
  SyntheticDataConfig synthetic;
  dataset::Modality modality = dataset::Modality::kRgbd;
  double learning_rate = 1e-3;
  int batch_size = 8;
  int epochs = 20;
  // Stops every seed after this many optimizer steps (0: no limit).
  std::int64_t max_steps = 0;
  std::vector<std::uint64_t> seeds{1, 2, 3};
  dataset::SplitSpec split;
  LossWeights loss_weights;
  // Online augmentation with one fresh random spec per sample and epoch.
  bool augment = false;
  // Ablation: weight background pixels by `background_weight` instead of 1.
  bool mask_positive_regions = false;
  double background_weight = 0.1;
  // Width normalization in pixels; 0 selects 150 * input_size / 224.
  double w_max = 0.0;
  // Validation (and best-checkpoint selection) after every this many epochs.
  int validate_every = 1;
  model::ModelConfig model;

  void validate() const;
  double resolved_w_max() const;
  bool operator==(const TrainConfig&) const = default;
};

void to_json(nlohmann::json& j, const LossWeights& w);
void from_json(const nlohmann::json& j, LossWeights& w);
void to_json(nlohmann::json& j, const SyntheticDataConfig& c);
void from_json(const nlohmann::json& j, SyntheticDataConfig& c);
void to_json(nlohmann::json& j, const TrainConfig& c);
/// Missing keys keep their defaults.
void from_json(const nlohmann::json& j, TrainConfig& c);

/// Frozen desk-scale recipe: RGB-D, 64 px input, base width 8, five residual
/// blocks, batch 8, lr 1e-3, 20 epochs, seeds {1, 2, 3}, 512 synthetic
/// training scenes and 128 held-out scenes.
TrainConfig desk_config();

/// Frozen full-resolution recipe for the Cornell dataset (224 px, base
/// width 32, 50 epochs, online augmentation).
TrainConfig cornell_config(const std::string& path);

}  // namespace graspforge::train
