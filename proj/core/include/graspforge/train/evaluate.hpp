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
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graspforge/dataset/sample.hpp"
#include "graspforge/geometry/maps.hpp"
#include "graspforge/model/checkpoint.hpp"

namespace graspforge::train {

struct Prediction {
  geometry::GraspMaps maps;
  std::vector<geometry::PixelGrasp> grasps;  // strongest first
  double latency_ms = 0.0;                   // forward pass only
};

/// Eval-mode forward on one sample already at the model's input size, then
/// peak extraction of up to `top_k` grasps.
Prediction predict(model::GrConvNet& model, const dataset::Sample& sample, dataset::Modality modality,
                   double w_max, int top_k);

struct SampleRecord {
  std::string id;
  bool matched = false;
  bool has_prediction = false;
  double best_iou = 0.0;
  double angle_error = 0.0;  // radians, to the best-IoU ground truth
  geometry::PixelGrasp top;
};

struct SeedReport {
  std::uint64_t seed = 0;
  double accuracy = 0.0;
  double mean_latency_ms = 0.0;
  std::vector<SampleRecord> records;
};

inline constexpr int kEvalReportSchemaVersion = 1;

struct EvalReport {
  std::string modality;
  std::string split;
  std::vector<SeedReport> seeds;
  double mean_accuracy = 0.0;
  double mean_latency_ms = 0.0;
};

void to_json(nlohmann::json& j, const SampleRecord& r);
void to_json(nlohmann::json& j, const SeedReport& r);
void to_json(nlohmann::json& j, const EvalReport& r);

/// Top-1 rectangle metric over `samples` (already at model resolution).
/// Throws DataError on an empty set.
SeedReport evaluate_model(model::GrConvNet& model, std::span<const dataset::Sample> samples,
                          dataset::Modality modality, double w_max, std::uint64_t seed = 0);

/// Evaluates each checkpoint and averages accuracies and latencies. Throws
/// ConfigMismatchError when a checkpoint was trained for another modality.
EvalReport evaluate(std::span<model::Checkpoint* const> checkpoints, std::span<const dataset::Sample> samples,
                    dataset::Modality modality, const std::string& split_name = "");

/// Results table in the "Accuracy (%)" layout.
std::string format_report_table(std::span<const EvalReport> reports, std::span<const std::string> labels);

}  // namespace graspforge::train
