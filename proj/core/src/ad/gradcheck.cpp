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

#include "graspforge/ad/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "graspforge/ad/ops.hpp"

namespace graspforge::ad {

namespace {

double projected(const Tensor<double>& out, const std::vector<double>& weights) {
  double acc = 0.0;
  const auto v = out.data();
  for (std::size_t i = 0; i < v.size(); ++i) acc += v[i] * weights[i];
  return acc;
}

}  // namespace

GradCheckReport finite_diff_check(const std::function<Tensor<double>()>& fn,
                                  std::span<Tensor<double>> inputs, const GradCheckOptions& options) {
  for (auto& in : inputs) {
    in.set_requires_grad(true);
    in.zero_grad();
  }
  Tensor<double> out = fn();
  std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::vector<double> weights(out.numel());
  for (auto& w : weights) w = uniform(rng);
  out.backward(weights);

  std::vector<std::vector<double>> analytic;
  for (auto& in : inputs) {
    analytic.emplace_back(in.has_grad() ? std::vector<double>(in.grad().begin(), in.grad().end())
                                        : std::vector<double>(in.numel(), 0.0));
  }

  GradCheckReport report;
  report.tolerance = options.tolerance;
  NoGradGuard no_grad;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    auto values = inputs[k].data();
    double worst = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double saved = values[i];
      values[i] = saved + options.step;
      const double plus = projected(fn(), weights);
      values[i] = saved - options.step;
      const double minus = projected(fn(), weights);
      values[i] = saved;
      const double numeric = (plus - minus) / (2.0 * options.step);
      const double a = analytic[k][i];
      const double denom = std::max({std::abs(a), std::abs(numeric), options.magnitude_floor});
      worst = std::max(worst, std::abs(a - numeric) / denom);
    }
    report.max_rel_error.push_back(worst);
    report.worst = std::max(report.worst, worst);
  }
  report.passed = report.worst < options.tolerance;
  return report;
}

GradCheckReport finite_diff_check(const TensorOp& op, const std::vector<Shape>& input_shapes,
                                  double tolerance, std::uint64_t seed, const InputSampler& sampler) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::vector<Tensor<double>> inputs;
  for (const auto& shape : input_shapes) {
    std::vector<double> values(numel(shape));
    for (auto& v : values) v = sampler ? sampler(rng) : uniform(rng);
    inputs.push_back(Tensor<double>::from(shape, std::move(values), true));
  }
  GradCheckOptions options;
  options.tolerance = tolerance;
  options.seed = seed;
  return finite_diff_check([&] { return op(inputs); }, inputs, options);
}

}  // namespace graspforge::ad
