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

#include "graspforge/ad/tensor.hpp"

namespace graspforge::ad {

/// A trainable tensor plus its Adam moment estimates.
template <typename T>
struct Parameter {
  std::string name;
  Tensor<T> tensor;
  std::vector<T> first_moment;
  std::vector<T> second_moment;
  std::int64_t step = 0;

  Parameter() = default;
  Parameter(std::string param_name, Tensor<T> value);
};

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// One bias-corrected Adam update on every parameter. Gradients are left in
/// place; call zero_grad() before the next backward pass.
/// Throws InvalidArgument naming the first parameter without a gradient.
template <typename T>
void adam_step(std::span<Parameter<T>* const> params, const AdamOptions& options);

template <typename T>
void zero_grad(std::span<Parameter<T>* const> params);

extern template struct Parameter<float>;
extern template struct Parameter<double>;

}  // namespace graspforge::ad
