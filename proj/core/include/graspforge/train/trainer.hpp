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
#include <functional>
#include <optional>
#include <ostream>
#include <vector>

#include "graspforge/model/checkpoint.hpp"
#include "graspforge/train/config.hpp"
#include "graspforge/train/evaluate.hpp"

namespace graspforge::train {

/// Samples at model resolution.
struct TrainData {
  std::vector<dataset::Sample> train;
  std::vector<dataset::Sample> val;
};

/// Loads (or generates) the dataset named by the config, splits it and
/// crops/resizes every sample to the model input size.
TrainData load_training_data(const TrainConfig& config);

struct StepLog {
  std::int64_t step = 0;  // 1-based, per seed
  std::uint64_t seed = 0;
  double loss_total = 0.0;
  double loss_q = 0.0;
  double loss_cos = 0.0;
  double loss_sin = 0.0;
  double loss_w = 0.0;
  double lr = 0.0;
};

inline constexpr const char* kTrainLogHeader = "step,seed,loss_total,loss_q,loss_cos,loss_sin,loss_w,lr";
void write_log_row(std::ostream& out, const StepLog& row);

struct SeedRun {
  std::uint64_t seed = 0;
  std::vector<StepLog> steps;
  std::vector<double> val_accuracy;  // one entry per validation
  int best_epoch = 0;
  // Best-by-validation-accuracy weights; the final weights when there is no
  // validation set.
  model::Checkpoint best;
};

struct TrainOptions {
  // When set, writes seed_<s>/best.grcn and train_log.csv here.
  std::optional<std::filesystem::path> output_dir;
  // Receives every step as it completes.
  std::function<void(const StepLog&)> on_step;
};

/// Trains one model per seed. Throws DataError on an empty training set and
/// NumericError when the loss becomes non-finite.
std::vector<SeedRun> train(const TrainConfig& config, const TrainData& data, const TrainOptions& options = {});

struct AblationRow {
  dataset::Modality modality = dataset::Modality::kRgbd;
  int input_channels = 0;
  EvalReport report;
  std::vector<std::string> val_ids;
};

/// Trains and evaluates depth, RGB and RGB-D variants of `base` on the same
/// data, seeds and validation ids.
std::vector<AblationRow> ablate_modalities(const TrainConfig& base, const TrainData& data);

}  // namespace graspforge::train
