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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "graspforge/ad/ops.hpp"
#include "graspforge/errors.hpp"

namespace graspforge::ad {
namespace {

using TD = Tensor<double>;

TD random_tensor(Shape shape, std::mt19937_64& rng, bool grad = false) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(numel(shape));
  for (auto& x : v) x = dist(rng);
  return TD::from(std::move(shape), std::move(v), grad);
}

// Direct six-loop cross-correlation.
std::vector<double> naive_conv(const TD& x, const TD& w, const TD& b, int stride, int pad) {
  const int B = x.dim(0), C = x.dim(1), H = x.dim(2), W = x.dim(3);
  const int O = w.dim(0), K = w.dim(2);
  const int Ho = (H + 2 * pad - K) / stride + 1, Wo = (W + 2 * pad - K) / stride + 1;
  std::vector<double> out(static_cast<std::size_t>(B) * O * Ho * Wo);
  for (int n = 0; n < B; ++n)
    for (int o = 0; o < O; ++o)
      for (int i = 0; i < Ho; ++i)
        for (int j = 0; j < Wo; ++j) {
          double acc = b.defined() ? b.data()[o] : 0.0;
          for (int c = 0; c < C; ++c)
            for (int ki = 0; ki < K; ++ki)
              for (int kj = 0; kj < K; ++kj) {
                const int y = i * stride - pad + ki, xx = j * stride - pad + kj;
                if (y < 0 || y >= H || xx < 0 || xx >= W) continue;
                acc += x.data()[((n * C + c) * H + y) * W + xx] * w.data()[((o * C + c) * K + ki) * K + kj];
              }
          out[((n * O + o) * Ho + i) * Wo + j] = acc;
        }
  return out;
}

// Scatter form of the transposed convolution.
std::vector<double> naive_conv_t(const TD& x, const TD& w, int stride, int pad, int out_pad) {
  const int B = x.dim(0), C = x.dim(1), H = x.dim(2), W = x.dim(3);
  const int O = w.dim(1), K = w.dim(2);
  const int Ho = (H - 1) * stride - 2 * pad + K + out_pad, Wo = (W - 1) * stride - 2 * pad + K + out_pad;
  std::vector<double> out(static_cast<std::size_t>(B) * O * Ho * Wo, 0.0);
  for (int n = 0; n < B; ++n)
    for (int c = 0; c < C; ++c)
      for (int i = 0; i < H; ++i)
        for (int j = 0; j < W; ++j)
          for (int o = 0; o < O; ++o)
            for (int ki = 0; ki < K; ++ki)
              for (int kj = 0; kj < K; ++kj) {
                const int y = i * stride - pad + ki, xx = j * stride - pad + kj;
                if (y < 0 || y >= Ho || xx < 0 || xx >= Wo) continue;
                out[((n * O + o) * Ho + y) * Wo + xx] +=
                    x.data()[((n * C + c) * H + i) * W + j] * w.data()[((c * O + o) * K + ki) * K + kj];
              }
  return out;
}

TEST(Conv2d, IdentityKernelReproducesInput) {
  auto x = TD::from({1, 1, 3, 3}, {1, 2, 3, 4, 5, 6, 7, 8, 9});
  auto w = TD::from({1, 1, 1, 1}, {1});
  auto b = TD::from({1}, {0});
  auto y = conv2d(x, w, b, 1, 0);
  ASSERT_EQ(y.shape(), (Shape{1, 1, 3, 3}));
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(y.data()[i], x.data()[i]);
}

TEST(Conv2d, AllOnesKernelSumsWindow) {
  auto y = conv2d(TD::from({1, 1, 2, 2}, {1, 2, 3, 4}), TD::full({1, 1, 2, 2}, 1.0), TD::from({1}, {0}), 1, 0);
  ASSERT_EQ(y.shape(), (Shape{1, 1, 1, 1}));
  EXPECT_EQ(y.item(), 10.0);
}

TEST(Conv2d, OutputExtentFormula) {
  auto x = Tensor<float>::zeros({1, 1, 224, 224});
  auto y = conv2d(x, Tensor<float>::zeros({2, 1, 4, 4}), Tensor<float>(), 2, 1);
  EXPECT_EQ(y.shape(), (Shape{1, 2, 112, 112}));
}

TEST(Conv2d, MatchesNaiveLoopsOnRandomShapes) {
  std::mt19937_64 rng(11);
  struct Case { int b, c, h, w, o, k, s, p; };
  for (const Case& c : {Case{1, 3, 7, 5, 2, 3, 1, 1}, Case{2, 2, 9, 9, 3, 4, 2, 1}, Case{1, 4, 6, 8, 1, 9, 1, 4},
                        Case{2, 1, 5, 5, 2, 2, 1, 0}}) {
    auto x = random_tensor({c.b, c.c, c.h, c.w}, rng);
    auto w = random_tensor({c.o, c.c, c.k, c.k}, rng);
    auto b = random_tensor({c.o}, rng);
    auto y = conv2d(x, w, b, c.s, c.p);
    const auto ref = naive_conv(x, w, b, c.s, c.p);
    ASSERT_EQ(y.numel(), ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(y.data()[i], ref[i], 1e-12);
  }
}

TEST(Conv2d, ChannelMismatchNamesBothShapes) {
  auto x = TD::zeros({1, 3, 5, 5});
  auto w = TD::zeros({2, 4, 3, 3});
  try {
    conv2d(x, w, TD(), 1, 1);
    FAIL() << "expected ShapeError";
  } catch (const ShapeError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("1x3x5x5"), std::string::npos) << msg;
    EXPECT_NE(msg.find("2x4x3x3"), std::string::npos) << msg;
  }
}

TEST(Conv2d, ZeroExtentOutputRejected) {
  EXPECT_THROW(conv2d(TD::zeros({1, 1, 2, 2}), TD::zeros({1, 1, 5, 5}), TD(), 1, 0), ShapeError);
}

TEST(ConvTranspose2d, OutputExtentFormula) {
  auto y = conv_transpose2d(Tensor<float>::zeros({1, 2, 56, 56}), Tensor<float>::zeros({2, 1, 4, 4}),
                            Tensor<float>(), 2, 1, 0);
  EXPECT_EQ(y.shape(), (Shape{1, 1, 112, 112}));
}

TEST(ConvTranspose2d, ScalarScattersOverKernel) {
  auto y = conv_transpose2d(TD::from({1, 1, 1, 1}, {5}), TD::full({1, 1, 2, 2}, 1.0), TD::from({1}, {0}), 1, 0, 0);
  ASSERT_EQ(y.shape(), (Shape{1, 1, 2, 2}));
  for (double v : y.data()) EXPECT_EQ(v, 5.0);
}

TEST(ConvTranspose2d, MatchesNaiveScatter) {
  std::mt19937_64 rng(12);
  auto x = random_tensor({2, 3, 4, 5}, rng);
  auto w = random_tensor({3, 2, 4, 4}, rng);
  auto y = conv_transpose2d(x, w, TD(), 2, 1, 1);
  const auto ref = naive_conv_t(x, w, 2, 1, 1);
  ASSERT_EQ(y.numel(), ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(y.data()[i], ref[i], 1e-12);
}

TEST(ConvTranspose2d, InvalidOutputPaddingRejected) {
  EXPECT_THROW(conv_transpose2d(TD::zeros({1, 1, 3, 3}), TD::zeros({1, 1, 3, 3}), TD(), 2, 0, 2), InvalidArgument);
}

TEST(ConvTranspose2d, IsAdjointOfConv2d) {
  std::mt19937_64 rng(13);
  struct Case { int c, o, h, k, s, p; };
  for (const Case& c : {Case{2, 3, 8, 3, 1, 1}, Case{3, 2, 9, 4, 2, 1}, Case{1, 1, 11, 9, 1, 4}, Case{2, 2, 10, 4, 2, 2}}) {
    auto x = random_tensor({2, c.c, c.h, c.h}, rng);
    auto w = random_tensor({c.o, c.c, c.k, c.k}, rng);
    auto cx = conv2d(x, w, TD(), c.s, c.p);
    auto y = random_tensor(cx.shape(), rng);
    // conv2d's OIKK weight is the IOKK weight of the transposed op going back.
    const int out_pad = c.h - ((cx.dim(2) - 1) * c.s - 2 * c.p + c.k);
    ASSERT_GE(out_pad, 0);
    auto ty = conv_transpose2d(y, w, TD(), c.s, c.p, out_pad);
    ASSERT_EQ(ty.shape(), x.shape());
    const double lhs = inner(cx, y), rhs = inner(x, ty);
    EXPECT_NEAR(lhs, rhs, 1e-10 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(BatchNorm2d, EvalModeMatchesFormula) {
  std::mt19937_64 rng(14);
  auto x = random_tensor({2, 3, 4, 4}, rng);
  auto gamma = TD::from({3}, {0.5, 1.5, -2.0});
  auto beta = TD::from({3}, {0.1, -0.2, 0.3});
  RunningStats<double> stats{{0.2, -0.1, 0.05}, {0.9, 1.3, 0.4}};
  auto y = batch_norm2d(x, gamma, beta, stats, Mode::kEval, 0.1, 1e-5);
  for (int n = 0; n < 2; ++n)
    for (int c = 0; c < 3; ++c)
      for (int i = 0; i < 16; ++i) {
        const std::size_t k = (n * 3 + c) * 16 + i;
        const double ref =
            (x.data()[k] - stats.mean[c]) / std::sqrt(stats.var[c] + 1e-5) * gamma.data()[c] + beta.data()[c];
        EXPECT_NEAR(y.data()[k], ref, 1e-12);
      }
}

TEST(BatchNorm2d, ConstantChannelGivesBeta) {
  auto x = TD::full({2, 1, 3, 3}, 4.0);
  auto stats = RunningStats<double>::identity(1);
  auto y = batch_norm2d(x, TD::full({1}, 2.0), TD::full({1}, 0.7), stats, Mode::kTrain);
  for (double v : y.data()) EXPECT_NEAR(v, 0.7, 1e-9);
}

TEST(BatchNorm2d, TrainModeUpdatesRunningStats) {
  auto x = TD::from({1, 1, 2, 2}, {1, 2, 3, 4});
  auto stats = RunningStats<double>::identity(1);
  batch_norm2d(x, TD::full({1}, 1.0), TD::zeros({1}), stats, Mode::kTrain, 0.1, 1e-5);
  // Batch mean 2.5, unbiased variance 5/3.
  EXPECT_NEAR(stats.mean[0], 0.1 * 2.5, 1e-12);
  EXPECT_NEAR(stats.var[0], 0.9 + 0.1 * (5.0 / 3.0), 1e-12);
}

TEST(BatchNorm2d, SingleElementBatchRejected) {
  auto stats = RunningStats<double>::identity(2);
  EXPECT_THROW(batch_norm2d(TD::zeros({1, 2, 1, 1}), TD::full({2}, 1.0), TD::zeros({2}), stats, Mode::kTrain),
               InvalidArgument);
}

TEST(Relu, ClampsNegatives) {
  auto y = relu(TD::from({3}, {-1, 0, 2}));
  EXPECT_EQ(std::vector<double>(y.data().begin(), y.data().end()), (std::vector<double>{0, 0, 2}));
  auto z = relu(TD::from({2}, {-3, -0.5}));
  for (double v : z.data()) EXPECT_EQ(v, 0.0);
}

TEST(Relu, GradientIsStep) {
  auto x = TD::from({2}, {-1, 2}, true);
  sum(relu(x)).backward();
  EXPECT_EQ(x.grad()[0], 0.0);
  EXPECT_EQ(x.grad()[1], 1.0);
}

TEST(Relu, SubgradientAtZeroIsZero) {
  auto x = TD::from({1}, {0.0}, true);
  sum(relu(x)).backward();
  EXPECT_EQ(x.grad()[0], 0.0);
}

TEST(SmoothL1, QuadraticBranch) {
  EXPECT_DOUBLE_EQ(smooth_l1(TD::full({2, 3}, 1.5), TD::full({2, 3}, 1.0)).item(), 0.125);
}

TEST(SmoothL1, LinearBranch) {
  EXPECT_DOUBLE_EQ(smooth_l1(TD::full({4}, -2.0), TD::full({4}, 0.0)).item(), 1.5);
}

TEST(SmoothL1, ZeroAtTargetWithZeroGradient) {
  auto p = TD::from({3}, {0.2, -0.4, 0.9}, true);
  auto l = smooth_l1(p, TD::from({3}, {0.2, -0.4, 0.9}));
  EXPECT_EQ(l.item(), 0.0);
  l.backward();
  for (double g : p.grad()) EXPECT_EQ(g, 0.0);
}

TEST(SmoothL1, ContinuousWithContinuousSlopeAtOne) {
  auto value = [](double d) { return smooth_l1(TD::full({1}, d), TD::full({1}, 0.0)).item(); };
  auto slope = [](double d) {
    auto p = TD::full({1}, d, true);
    smooth_l1(p, TD::full({1}, 0.0)).backward();
    return p.grad()[0];
  };
  EXPECT_DOUBLE_EQ(value(1.0), 0.5);
  EXPECT_NEAR(value(1.0 - 1e-9), 0.5, 1e-8);
  EXPECT_NEAR(slope(1.0 - 1e-12), 1.0, 1e-9);
  EXPECT_DOUBLE_EQ(slope(1.0), 1.0);
  EXPECT_DOUBLE_EQ(slope(1.0 + 1e-12), 1.0);
}

TEST(SmoothL1, ShapeMismatchRejected) {
  EXPECT_THROW(smooth_l1(TD::zeros({2, 2}), TD::zeros({4})), ShapeError);
}

TEST(SmoothL1, WeightedMeanUsesWeights) {
  // d = {0.5, 2}: z = {0.125, 1.5}; weights {3, 1} -> (0.375 + 1.5) / 4.
  auto l = smooth_l1(TD::from({2}, {0.5, 2.0}), TD::zeros({2}), TD::from({2}, {3.0, 1.0}));
  EXPECT_DOUBLE_EQ(l.item(), (3 * 0.125 + 1.5) / 4.0);
}

TEST(Tensor, ShapeAndDataMustAgree) {
  EXPECT_THROW(TD::from({2, 2}, {1, 2, 3}), ShapeError);
}

TEST(Tensor, NoGradGuardSkipsGraph) {
  auto x = TD::from({2}, {1, 2}, true);
  NoGradGuard guard;
  auto y = scale(x, 3.0);
  EXPECT_FALSE(y.requires_grad());
}

TEST(Tensor, ForwardIsBitwiseRepeatable) {
  std::mt19937_64 rng(15);
  auto x = random_tensor({1, 3, 12, 12}, rng);
  auto w = random_tensor({4, 3, 3, 3}, rng);
  auto a = conv2d(x, w, TD(), 1, 1);
  auto b = conv2d(x, w, TD(), 1, 1);
  for (std::size_t i = 0; i < a.numel(); ++i) ASSERT_EQ(a.data()[i], b.data()[i]);
}

TEST(Tensor, OutputsFiniteForFiniteInputs) {
  std::mt19937_64 rng(16);
  auto x = random_tensor({2, 2, 6, 6}, rng, true);
  auto w = random_tensor({2, 2, 3, 3}, rng, true);
  auto stats = RunningStats<double>::identity(2);
  auto y = relu(batch_norm2d(conv2d(x, w, TD(), 1, 1), TD::full({2}, 1.0, true), TD::zeros({2}, true), stats,
                             Mode::kTrain));
  auto l = smooth_l1(sigmoid(y), TD::zeros(y.shape()));
  l.backward();
  for (double v : y.data()) EXPECT_TRUE(std::isfinite(v));
  for (double g : x.grad()) EXPECT_TRUE(std::isfinite(g));
  for (double g : w.grad()) EXPECT_TRUE(std::isfinite(g));
}

}  // namespace
}  // namespace graspforge::ad
