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
#include <random>
#include <vector>

#include "graspforge/ad/tensor.hpp"

namespace graspforge::ad {

/// 2-D convolution (cross-correlation) of a BCHW input with an OIKK weight.
/// `bias` may be undefined. Output extent per axis is
/// floor((H + 2*padding - K) / stride) + 1.
template <typename T>
Tensor<T> conv2d(const Tensor<T>& input, const Tensor<T>& weight, const Tensor<T>& bias,
                 int stride, int padding);

/// Transposed convolution with an IOKK weight: the adjoint of conv2d with the
/// same weight, stride and padding. Output extent per axis is
/// (H - 1) * stride - 2 * padding + K + output_padding.
template <typename T>
Tensor<T> conv_transpose2d(const Tensor<T>& input, const Tensor<T>& weight, const Tensor<T>& bias,
                           int stride, int padding, int output_padding);

template <typename T>
struct RunningStats {
  std::vector<T> mean;
  std::vector<T> var;

  static RunningStats identity(int channels) {
    return {std::vector<T>(static_cast<std::size_t>(channels), T(0)),
            std::vector<T>(static_cast<std::size_t>(channels), T(1))};
  }
};

/// Per-channel batch normalization of a BCHW tensor. Train mode normalizes
/// with biased batch statistics and folds the unbiased variance into `stats`;
/// eval mode normalizes with `stats`.
template <typename T>
Tensor<T> batch_norm2d(const Tensor<T>& input, const Tensor<T>& gamma, const Tensor<T>& beta,
                       RunningStats<T>& stats, Mode mode, T momentum = T(0.1),
                       T epsilon = T(1e-5));

/// max(0, x); the subgradient at 0 is 0.
template <typename T>
Tensor<T> relu(const Tensor<T>& input);

template <typename T>
Tensor<T> sigmoid(const Tensor<T>& input);

template <typename T>
Tensor<T> tanh(const Tensor<T>& input);

/// Elementwise sum of two same-shape tensors.
template <typename T>
Tensor<T> add(const Tensor<T>& a, const Tensor<T>& b);

template <typename T>
Tensor<T> scale(const Tensor<T>& a, T factor);

/// Sum of all elements as a 1-element tensor.
template <typename T>
Tensor<T> sum(const Tensor<T>& a);

/// Inverted dropout. Identity in eval mode or when rate == 0.
template <typename T>
Tensor<T> dropout(const Tensor<T>& input, T rate, Mode mode, std::mt19937_64& rng);

/// Mean Huber loss with unit threshold:
/// z = 0.5 d^2 if |d| < 1 else |d| - 0.5, d = prediction - target.
/// Differentiable with respect to `prediction` only.
template <typename T>
Tensor<T> smooth_l1(const Tensor<T>& prediction, const Tensor<T>& target);

/// Weighted mean sum(w z) / sum(w) of the same per-element loss. Weights are
/// constants and must have a positive sum.
template <typename T>
Tensor<T> smooth_l1(const Tensor<T>& prediction, const Tensor<T>& target, const Tensor<T>& weights);

/// Sum over elements of a * b, computed without graph recording.
template <typename T>
T inner(const Tensor<T>& a, const Tensor<T>& b);

}  // namespace graspforge::ad
