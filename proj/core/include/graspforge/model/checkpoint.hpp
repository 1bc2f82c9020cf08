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
#include <filesystem>
#include <string>

#include "graspforge/model/grconvnet.hpp"

namespace graspforge::model {

struct TrainingMetadata {
  std::uint64_t seed = 0;
  int epoch = 0;
  std::int64_t optimizer_step = 0;
  // "d", "rgb" or "rgbd"; empty when unknown.
  std::string modality;
  // Gripper opening (pixels at model resolution) that a width map value of 1 denotes.
  double w_max = 150.0;
  double validation_accuracy = 0.0;
};

void to_json(nlohmann::json& j, const TrainingMetadata& m);
void from_json(const nlohmann::json& j, TrainingMetadata& m);

struct Checkpoint {
  GrConvNet model;
  TrainingMetadata meta;
};

/// Writes parameters and running batch-norm statistics in the GRCN blob format.
void save_checkpoint(GrConvNet& model, const TrainingMetadata& meta, const std::filesystem::path& path);

/// Rebuilds the model from its stored config and restores every blob.
/// Throws CheckpointError if a blob is missing or has the wrong size.
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace graspforge::model
