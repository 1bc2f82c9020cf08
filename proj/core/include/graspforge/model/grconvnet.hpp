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
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graspforge/model/layers.hpp"

namespace graspforge::model {

/// Network hyperparameters. The parameter count of a built model depends on
/// nothing else.
struct ModelConfig {
  int input_channels = 4;
  int base_width = 32;
  int num_residual_blocks = 5;
  int input_size = 224;
  double dropout_rate = 0.1;
  std::uint64_t init_seed = 0;

  /// Throws InvalidArgument describing the first violated constraint.
  void validate() const;

  bool operator==(const ModelConfig&) const = default;
};

void to_json(nlohmann::json& j, const ModelConfig& c);
void from_json(const nlohmann::json& j, ModelConfig& c);

/// Raw head outputs after their squashing activations, each B x 1 x S x S.
struct GraspMapsTensor {
  ad::Tensor<float> quality;  // [0, 1]
  ad::Tensor<float> cos2t;    // [-1, 1]
  ad::Tensor<float> sin2t;    // [-1, 1]
  ad::Tensor<float> width;    // [0, 1], fraction of the maximum gripper width
};

/// Generative residual network: a three-layer convolutional stem down to a
/// quarter of the input resolution, a stack of residual blocks, a transposed
/// convolution decoder back to full resolution, and four 2x2 output heads.
class GrConvNet {
 public:
  explicit GrConvNet(const ModelConfig& config);

  GrConvNet(const GrConvNet&) = delete;
  GrConvNet& operator=(const GrConvNet&) = delete;
  GrConvNet(GrConvNet&&) noexcept;
  GrConvNet& operator=(GrConvNet&&) noexcept;
  ~GrConvNet();

  /// Forward pass on a B x n x S x S batch. Throws ConfigMismatchError on a
  /// channel-count mismatch and ShapeError on a spatial-size mismatch.
  GraspMapsTensor forward(const ad::Tensor<float>& image, ad::Mode mode);

  /// Output of the convolutional stem (before the residual stack).
  ad::Tensor<float> stem(const ad::Tensor<float>& image, ad::Mode mode);

  const ModelConfig& config() const { return config_; }

  std::vector<ad::Parameter<float>*> parameters();
  std::vector<NamedStats<float>> running_stats();
  std::size_t param_count();

  /// Wall-clock duration of the most recent forward() call.
  double last_forward_ms() const { return last_forward_ms_; }

  /// Reseeds the dropout stream (training determinism across resumes).
  void seed_dropout(std::uint64_t seed) { dropout_rng_.seed(seed); }

 private:
  struct Layers;

  ModelConfig config_;
  std::unique_ptr<Layers> layers_;
  std::mt19937_64 dropout_rng_;
  double last_forward_ms_ = 0.0;
};

}  // namespace graspforge::model
