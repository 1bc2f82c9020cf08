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
#include <set>

#include <gtest/gtest.h>

#include "graspforge/errors.hpp"
#include "graspforge/model/grconvnet.hpp"
#include "graspforge/model/layers.hpp"

namespace graspforge::model {
namespace {

ad::Tensor<float> random_input(int channels, int size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
  std::vector<float> v(static_cast<std::size_t>(channels) * size * size);
  for (auto& x : v) x = dist(rng);
  return ad::Tensor<float>::from({1, channels, size, size}, v);
}

ModelConfig small_config() {
  ModelConfig c;
  c.base_width = 4;
  c.num_residual_blocks = 2;
  c.input_size = 32;
  return c;
}

// Conv weight + bias.
std::size_t conv_params(int in, int out, int k) { return static_cast<std::size_t>(in) * out * k * k + out; }

// Independent tally of the layer list: stem 9x9 / 4x4 s2 / 4x4 s2, residual
// blocks of two 3x3 convs with batch norm, a mirrored decoder and four 2x2 heads.
std::size_t expected_param_count(const ModelConfig& c) {
  const int w = c.base_width;
  std::size_t n = 0;
  n += conv_params(c.input_channels, w, 9) + 2 * w;
  n += conv_params(w, 2 * w, 4) + 2 * 2 * w;
  n += conv_params(2 * w, 4 * w, 4) + 2 * 4 * w;
  n += static_cast<std::size_t>(c.num_residual_blocks) * 2 * (conv_params(4 * w, 4 * w, 3) + 2 * 4 * w);
  n += conv_params(4 * w, 2 * w, 4) + 2 * 2 * w;
  n += conv_params(2 * w, w, 4) + 2 * w;
  n += conv_params(w, w, 9);
  n += 4 * conv_params(w, 1, 2);
  return n;
}

TEST(GrConvNet, DefaultForwardYieldsFourFullSizeMaps) {
  GrConvNet net(ModelConfig{});
  ad::NoGradGuard guard;
  const auto maps = net.forward(random_input(4, 224, 1), ad::Mode::kEval);
  for (const auto* t : {&maps.quality, &maps.cos2t, &maps.sin2t, &maps.width}) {
    EXPECT_EQ(t->shape(), (ad::Shape{1, 1, 224, 224}));
  }
  for (float v : maps.quality.data()) ASSERT_TRUE(v >= 0.0f && v <= 1.0f);
  for (float v : maps.width.data()) ASSERT_TRUE(v >= 0.0f && v <= 1.0f);
  for (float v : maps.cos2t.data()) ASSERT_TRUE(v >= -1.0f && v <= 1.0f);
  for (float v : maps.sin2t.data()) ASSERT_TRUE(v >= -1.0f && v <= 1.0f);
}

TEST(GrConvNet, StemReachesQuarterResolution) {
  GrConvNet net(ModelConfig{});
  ad::NoGradGuard guard;
  const auto stem = net.stem(random_input(4, 224, 2), ad::Mode::kEval);
  EXPECT_EQ(stem.dim(2), 56);
  EXPECT_EQ(stem.dim(3), 56);
  EXPECT_EQ(stem.dim(1), 128);
}

TEST(GrConvNet, DefaultParameterCountIsPinned) {
  GrConvNet net(ModelConfig{});
  EXPECT_EQ(net.param_count(), 1900900u);
  EXPECT_EQ(net.param_count(), expected_param_count(ModelConfig{}));
}

TEST(GrConvNet, ParameterCountMatchesLayerTally) {
  for (int channels : {1, 3, 4}) {
    for (int width : {4, 8, 16}) {
      ModelConfig c = small_config();
      c.input_channels = channels;
      c.base_width = width;
      c.num_residual_blocks = 3;
      EXPECT_EQ(GrConvNet(c).param_count(), expected_param_count(c)) << channels << " " << width;
    }
  }
}

TEST(GrConvNet, WiderModelHasMoreParameters) {
  ModelConfig a = small_config();
  ModelConfig b = a;
  b.base_width *= 2;
  EXPECT_GT(GrConvNet(b).param_count(), GrConvNet(a).param_count());
}

TEST(GrConvNet, ParameterCountIndependentOfSeedAndSize) {
  ModelConfig a = small_config();
  ModelConfig b = a;
  b.init_seed = 99;
  b.input_size = 64;
  b.dropout_rate = 0.0;
  EXPECT_EQ(GrConvNet(a).param_count(), GrConvNet(b).param_count());
}

TEST(GrConvNet, InvalidConfigsRejected) {
  ModelConfig c = small_config();
  c.num_residual_blocks = 0;
  EXPECT_THROW(GrConvNet{c}, InvalidArgument);
  c = small_config();
  c.input_size = 30;
  EXPECT_THROW(GrConvNet{c}, InvalidArgument);
  c = small_config();
  c.dropout_rate = 1.0;
  EXPECT_THROW(GrConvNet{c}, InvalidArgument);
  c = small_config();
  c.input_channels = 0;
  EXPECT_THROW(GrConvNet{c}, InvalidArgument);
}

TEST(GrConvNet, DepthOnlyModelAcceptsOneChannel) {
  ModelConfig c = small_config();
  c.input_channels = 1;
  GrConvNet net(c);
  const auto maps = net.forward(random_input(1, 32, 3), ad::Mode::kEval);
  EXPECT_EQ(maps.quality.shape(), (ad::Shape{1, 1, 32, 32}));
}

TEST(GrConvNet, ChannelMismatchIsConfigError) {
  ModelConfig c = small_config();
  c.input_channels = 3;
  GrConvNet net(c);
  EXPECT_THROW(net.forward(random_input(4, 32, 4), ad::Mode::kEval), ConfigMismatchError);
}

TEST(GrConvNet, SpatialMismatchIsShapeError) {
  GrConvNet net(small_config());
  EXPECT_THROW(net.forward(random_input(4, 64, 5), ad::Mode::kEval), ShapeError);
}

TEST(GrConvNet, EvalForwardIsDeterministic) {
  GrConvNet net(small_config());
  const auto x = random_input(4, 32, 6);
  const auto a = net.forward(x, ad::Mode::kEval);
  const auto b = net.forward(x, ad::Mode::kEval);
  for (std::size_t i = 0; i < a.quality.numel(); ++i) {
    ASSERT_EQ(a.quality.data()[i], b.quality.data()[i]);
    ASSERT_EQ(a.width.data()[i], b.width.data()[i]);
  }
}

TEST(GrConvNet, SameSeedSameWeights) {
  GrConvNet a(small_config()), b(small_config());
  const auto pa = a.parameters(), pb = b.parameters();
  ASSERT_EQ(pa.size(), pb.size());
  for (std::size_t i = 0; i < pa.size(); ++i) {
    EXPECT_EQ(pa[i]->name, pb[i]->name);
    EXPECT_TRUE(std::equal(pa[i]->tensor.data().begin(), pa[i]->tensor.data().end(), pb[i]->tensor.data().begin()));
  }
}

TEST(GrConvNet, RangesHoldForExtremeInputs) {
  GrConvNet net(small_config());
  auto x = ad::Tensor<float>::full({1, 4, 32, 32}, 1e4f);
  const auto maps = net.forward(x, ad::Mode::kEval);
  for (float v : maps.quality.data()) ASSERT_TRUE(v >= 0.0f && v <= 1.0f);
  for (float v : maps.cos2t.data()) ASSERT_TRUE(v >= -1.0f && v <= 1.0f);
}

TEST(GrConvNet, ParameterNamesAreUnique) {
  GrConvNet net(small_config());
  std::set<std::string> names;
  for (auto* p : net.parameters()) EXPECT_TRUE(names.insert(p->name).second) << p->name;
}

TEST(ResidualBlock, ZeroWeightsGiveIdentity) {
  std::mt19937_64 rng(7);
  ResidualBlock<float> block("res", 3, rng);
  std::vector<ad::Parameter<float>*> params;
  block.collect(params);
  for (auto* p : params) std::fill(p->tensor.data().begin(), p->tensor.data().end(), 0.0f);
  const auto x = random_input(3, 8, 8);
  for (auto mode : {ad::Mode::kEval, ad::Mode::kTrain}) {
    const auto y = block(x, mode);
    for (std::size_t i = 0; i < x.numel(); ++i) ASSERT_EQ(y.data()[i], x.data()[i]);
  }
}

}  // namespace
}  // namespace graspforge::model
