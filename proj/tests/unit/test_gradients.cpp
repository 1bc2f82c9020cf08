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

#include <random>

#include <gtest/gtest.h>

#include "graspforge/ad/gradcheck.hpp"
#include "graspforge/ad/ops.hpp"
#include "graspforge/model/layers.hpp"

namespace graspforge::ad {
namespace {

using TD = Tensor<double>;

double away_from_zero(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.1, 1.0);
  std::bernoulli_distribution sign(0.5);
  return sign(rng) ? mag(rng) : -mag(rng);
}

TEST(GradCheck, Conv2d) {
  const auto report = finite_diff_check(
      [](std::span<const TD> in) { return conv2d(in[0], in[1], in[2], 1, 1); }, {{2, 3, 5, 5}, {4, 3, 3, 3}, {4}},
      1e-4, 1);
  EXPECT_TRUE(report.passed) << report.worst;
  EXPECT_LT(report.worst, 1e-4);
}

TEST(GradCheck, StridedConv2d) {
  const auto report = finite_diff_check(
      [](std::span<const TD> in) { return conv2d(in[0], in[1], in[2], 2, 1); }, {{1, 2, 8, 8}, {3, 2, 4, 4}, {3}},
      1e-4, 2);
  EXPECT_TRUE(report.passed) << report.worst;
}

TEST(GradCheck, ConvTranspose2d) {
  const auto report = finite_diff_check(
      [](std::span<const TD> in) { return conv_transpose2d(in[0], in[1], in[2], 2, 1, 1); },
      {{2, 3, 4, 4}, {3, 2, 4, 4}, {2}}, 1e-4, 3);
  EXPECT_TRUE(report.passed) << report.worst;
}

TEST(GradCheck, BatchNormTrainMode) {
  const auto report = finite_diff_check(
      [](std::span<const TD> in) {
        auto stats = RunningStats<double>::identity(3);
        return batch_norm2d(in[0], in[1], in[2], stats, Mode::kTrain);
      },
      {{2, 3, 4, 4}, {3}, {3}}, 1e-4, 4);
  EXPECT_TRUE(report.passed) << report.worst;
}

TEST(GradCheck, BatchNormEvalMode) {
  const auto report = finite_diff_check(
      [](std::span<const TD> in) {
        RunningStats<double> stats{{0.1, -0.2}, {0.5, 2.0}};
        return batch_norm2d(in[0], in[1], in[2], stats, Mode::kEval);
      },
      {{2, 2, 3, 3}, {2}, {2}}, 1e-4, 5);
  EXPECT_TRUE(report.passed) << report.worst;
}

TEST(GradCheck, ReluAwayFromKink) {
  const auto report =
      finite_diff_check([](std::span<const TD> in) { return relu(in[0]); }, {{3, 7}}, 1e-6, 6, away_from_zero);
  EXPECT_TRUE(report.passed) << report.worst;
  EXPECT_LT(report.worst, 1e-6);
}

TEST(GradCheck, SmoothL1QuadraticRegion) {
  // Residuals in [-0.9, 0.9]; the target is a constant.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.45, 0.45);
  std::vector<double> p(20), t(20);
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = u(rng);
    t[i] = u(rng);
  }
  const TD target = TD::from({4, 5}, t);
  std::vector<TD> inputs{TD::from({4, 5}, p, true)};
  GradCheckOptions opt;
  opt.tolerance = 1e-6;
  const auto report = finite_diff_check([&] { return smooth_l1(inputs[0], target); }, inputs, opt);
  EXPECT_TRUE(report.passed) << report.worst;
}

TEST(GradCheck, SmoothL1LinearRegion) {
  const auto report = finite_diff_check(
      [](std::span<const TD> in) { return smooth_l1(in[0], TD::full(in[0].shape(), 3.0)); }, {{6}}, 1e-6, 8);
  EXPECT_TRUE(report.passed) << report.worst;
}

TEST(GradCheck, SigmoidTanhAddScale) {
  const auto report = finite_diff_check(
      [](std::span<const TD> in) { return add(sigmoid(in[0]), scale(tanh(in[1]), 0.5)); }, {{2, 3, 3}, {2, 3, 3}},
      1e-4, 9);
  EXPECT_TRUE(report.passed) << report.worst;
}

TEST(GradCheck, DropoutWithFixedMask) {
  const auto report = finite_diff_check(
      [](std::span<const TD> in) {
        std::mt19937_64 rng(42);
        return dropout(in[0], 0.3, Mode::kTrain, rng);
      },
      {{4, 6}}, 1e-4, 10);
  EXPECT_TRUE(report.passed) << report.worst;
}

TEST(GradCheck, ResidualBlock) {
  std::mt19937_64 rng(17);
  model::ResidualBlock<double> block("res", 3, rng);
  std::vector<Parameter<double>*> params;
  block.collect(params);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> xv(2 * 3 * 5 * 5);
  for (auto& v : xv) v = dist(rng);
  std::vector<TD> inputs{TD::from({2, 3, 5, 5}, xv, true)};
  for (auto* p : params) inputs.push_back(p->tensor);
  const auto report =
      finite_diff_check([&] { return block(inputs[0], Mode::kTrain); }, inputs, GradCheckOptions{});
  EXPECT_TRUE(report.passed) << report.worst;
  EXPECT_EQ(report.max_rel_error.size(), inputs.size());
}

TEST(GradCheck, ReportsFailureForWrongGradient) {
  // A hand-built op whose backward deliberately doubles the true gradient.
  const auto report = finite_diff_check(
      [](std::span<const TD> in) {
        const TD& x = in[0];
        std::vector<double> v(x.data().begin(), x.data().end());
        return TD::make_result(x.shape(), v, {x}, [x](Node<double>& self) mutable {
          for (std::size_t i = 0; i < self.grad.size(); ++i) x.node()->grad[i] += 2.0 * self.grad[i];
        });
      },
      {{5}}, 1e-4, 11);
  EXPECT_FALSE(report.passed);
  EXPECT_GT(report.worst, 0.1);
}

}  // namespace
}  // namespace graspforge::ad
