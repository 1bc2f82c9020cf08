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
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "graspforge/ad/tensor.hpp"

namespace graspforge::ad {

struct GradCheckOptions {
  double step = 1e-5;
  double tolerance = 1e-4;
  // Denominator floor: gradients smaller than this are compared absolutely.
  double magnitude_floor = 1e-4;
  std::uint64_t seed = 0;
};

struct GradCheckReport {
  /// Max over elements of |analytic - numeric| / max(|analytic|, |numeric|, floor), one entry per input.
  std::vector<double> max_rel_error;
  double worst = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Compares reverse-mode gradients against central differences.
///
/// `fn` is re-evaluated after every perturbation and must read the current
/// values of `inputs`. Non-scalar outputs are reduced with a fixed random
/// projection drawn from options.seed, so every output element is exercised.
GradCheckReport finite_diff_check(const std::function<Tensor<double>()>& fn,
                                  std::span<Tensor<double>> inputs, const GradCheckOptions& options = {});

using InputSampler = std::function<double(std::mt19937_64&)>;
using TensorOp = std::function<Tensor<double>(std::span<const Tensor<double>>)>;

/// Draws inputs of the given shapes (uniform in [-1, 1] unless `sampler` is
/// given) from `seed` and checks `op` with them.
GradCheckReport finite_diff_check(const TensorOp& op, const std::vector<Shape>& input_shapes,
                                  double tolerance, std::uint64_t seed, const InputSampler& sampler = {});

}  // namespace graspforge::ad
