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

#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "graspforge/ad/ops.hpp"
#include "graspforge/ad/optim.hpp"

namespace graspforge::model {

using ad::Mode;
using ad::Parameter;
using ad::Tensor;

template <typename T>
struct NamedStats {
  std::string name;
  ad::RunningStats<T>* stats;
};

namespace detail {

// U(-1/sqrt(fan_in), 1/sqrt(fan_in)).
template <typename T>
Tensor<T> fan_in_uniform(ad::Shape shape, int fan_in, std::mt19937_64& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  std::uniform_real_distribution<double> dist(-bound, bound);
  std::vector<T> values(ad::numel(shape));
  for (auto& v : values) v = static_cast<T>(dist(rng));
  return Tensor<T>::from(std::move(shape), std::move(values), true);
}

}  // namespace detail

template <typename T>
class Conv2d {
 public:
  Conv2d() = default;
  Conv2d(const std::string& name, int in_channels, int out_channels, int kernel, int stride, int padding,
         std::mt19937_64& rng)
      : weight(name + ".weight",
               detail::fan_in_uniform<T>({out_channels, in_channels, kernel, kernel}, in_channels * kernel * kernel, rng)),
        bias(name + ".bias", detail::fan_in_uniform<T>({out_channels}, in_channels * kernel * kernel, rng)),
        stride_(stride),
        padding_(padding) {}

  Tensor<T> operator()(const Tensor<T>& x) const {
    return ad::conv2d(x, weight.tensor, bias.tensor, stride_, padding_);
  }

  void collect(std::vector<Parameter<T>*>& out) {
    out.push_back(&weight);
    out.push_back(&bias);
  }

  Parameter<T> weight;
  Parameter<T> bias;

 private:
  int stride_ = 1;
  int padding_ = 0;
};

template <typename T>
class ConvTranspose2d {
 public:
  ConvTranspose2d() = default;
  ConvTranspose2d(const std::string& name, int in_channels, int out_channels, int kernel, int stride, int padding,
                  int output_padding, std::mt19937_64& rng)
      : weight(name + ".weight", detail::fan_in_uniform<T>({in_channels, out_channels, kernel, kernel},
                                                           out_channels * kernel * kernel, rng)),
        bias(name + ".bias", detail::fan_in_uniform<T>({out_channels}, out_channels * kernel * kernel, rng)),
        stride_(stride),
        padding_(padding),
        output_padding_(output_padding) {}

  Tensor<T> operator()(const Tensor<T>& x) const {
    return ad::conv_transpose2d(x, weight.tensor, bias.tensor, stride_, padding_, output_padding_);
  }

  void collect(std::vector<Parameter<T>*>& out) {
    out.push_back(&weight);
    out.push_back(&bias);
  }

  Parameter<T> weight;
  Parameter<T> bias;

 private:
  int stride_ = 1;
  int padding_ = 0;
  int output_padding_ = 0;
};

template <typename T>
class BatchNorm2d {
 public:
  static constexpr double kMomentum = 0.1;
  static constexpr double kEpsilon = 1e-5;

  BatchNorm2d() = default;
  BatchNorm2d(const std::string& name, int channels)
      : gamma(name + ".weight", Tensor<T>::full({channels}, T(1), true)),
        beta(name + ".bias", Tensor<T>::zeros({channels}, true)),
        stats(ad::RunningStats<T>::identity(channels)),
        name_(name) {}

  Tensor<T> operator()(const Tensor<T>& x, Mode mode) {
    return ad::batch_norm2d(x, gamma.tensor, beta.tensor, stats, mode, static_cast<T>(kMomentum),
                            static_cast<T>(kEpsilon));
  }

  void collect(std::vector<Parameter<T>*>& out) {
    out.push_back(&gamma);
    out.push_back(&beta);
  }
  void collect_stats(std::vector<NamedStats<T>>& out) { out.push_back({name_, &stats}); }

  Parameter<T> gamma;
  Parameter<T> beta;
  ad::RunningStats<T> stats;

 private:
  std::string name_;
};

/// conv3x3 -> BN -> ReLU -> conv3x3 -> BN, plus the identity skip.
template <typename T>
class ResidualBlock {
 public:
  ResidualBlock() = default;
  ResidualBlock(const std::string& name, int channels, std::mt19937_64& rng)
      : conv1_(name + ".conv1", channels, channels, 3, 1, 1, rng),
        bn1_(name + ".bn1", channels),
        conv2_(name + ".conv2", channels, channels, 3, 1, 1, rng),
        bn2_(name + ".bn2", channels) {}

  Tensor<T> operator()(const Tensor<T>& x, Mode mode) {
    Tensor<T> y = ad::relu(bn1_(conv1_(x), mode));
    y = bn2_(conv2_(y), mode);
    return ad::add(y, x);
  }

  void collect(std::vector<Parameter<T>*>& out) {
    conv1_.collect(out);
    bn1_.collect(out);
    conv2_.collect(out);
    bn2_.collect(out);
  }
  void collect_stats(std::vector<NamedStats<T>>& out) {
    bn1_.collect_stats(out);
    bn2_.collect_stats(out);
  }

 private:
  Conv2d<T> conv1_;
  BatchNorm2d<T> bn1_;
  Conv2d<T> conv2_;
  BatchNorm2d<T> bn2_;
};

}  // namespace graspforge::model
