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

#include "graspforge/model/grconvnet.hpp"

#include <chrono>

#include <spdlog/spdlog.h>

#include "graspforge/errors.hpp"

namespace graspforge::model {

void ModelConfig::validate() const {
  if (input_channels < 1) throw InvalidArgument("input_channels must be >= 1");
  if (base_width < 1) throw InvalidArgument("base_width must be >= 1");
  if (num_residual_blocks < 1) throw InvalidArgument("num_residual_blocks must be >= 1");
  if (input_size < 4 || input_size % 4 != 0) {
    throw InvalidArgument("input_size must be a positive multiple of 4, got " + std::to_string(input_size));
  }
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) throw InvalidArgument("dropout_rate must lie in [0, 1)");
}

void to_json(nlohmann::json& j, const ModelConfig& c) {
  j = nlohmann::json{{"input_channels", c.input_channels},
                     {"base_width", c.base_width},
                     {"num_residual_blocks", c.num_residual_blocks},
                     {"input_size", c.input_size},
                     {"dropout_rate", c.dropout_rate},
                     {"init_seed", c.init_seed}};
}

void from_json(const nlohmann::json& j, ModelConfig& c) {
  ModelConfig d;
  c.input_channels = j.value("input_channels", d.input_channels);
  c.base_width = j.value("base_width", d.base_width);
  c.num_residual_blocks = j.value("num_residual_blocks", d.num_residual_blocks);
  c.input_size = j.value("input_size", d.input_size);
  c.dropout_rate = j.value("dropout_rate", d.dropout_rate);
  c.init_seed = j.value("init_seed", d.init_seed);
}

struct GrConvNet::Layers {
  Conv2d<float> conv1, conv2, conv3;
  BatchNorm2d<float> bn1, bn2, bn3;
  std::vector<ResidualBlock<float>> residual;
  ConvTranspose2d<float> conv4, conv5, conv6;
  BatchNorm2d<float> bn4, bn5;
  Conv2d<float> quality_head, cos_head, sin_head, width_head;

  Layers(const ModelConfig& c, std::mt19937_64& rng) {
    const int w1 = c.base_width, w2 = 2 * c.base_width, w3 = 4 * c.base_width;
    conv1 = Conv2d<float>("conv1", c.input_channels, w1, 9, 1, 4, rng);
    bn1 = BatchNorm2d<float>("bn1", w1);
    conv2 = Conv2d<float>("conv2", w1, w2, 4, 2, 1, rng);
    bn2 = BatchNorm2d<float>("bn2", w2);
    conv3 = Conv2d<float>("conv3", w2, w3, 4, 2, 1, rng);
    bn3 = BatchNorm2d<float>("bn3", w3);
    residual.reserve(static_cast<std::size_t>(c.num_residual_blocks));
    for (int i = 0; i < c.num_residual_blocks; ++i) {
      residual.emplace_back("res" + std::to_string(i + 1), w3, rng);
    }
    // S/4 -> S/2 + 1 -> S + 1 -> S + 1; the 2x2 heads trim back to S.
    conv4 = ConvTranspose2d<float>("conv4", w3, w2, 4, 2, 1, 1, rng);
    bn4 = BatchNorm2d<float>("bn4", w2);
    conv5 = ConvTranspose2d<float>("conv5", w2, w1, 4, 2, 2, 1, rng);
    bn5 = BatchNorm2d<float>("bn5", w1);
    conv6 = ConvTranspose2d<float>("conv6", w1, w1, 9, 1, 4, 0, rng);
    quality_head = Conv2d<float>("quality", w1, 1, 2, 1, 0, rng);
    cos_head = Conv2d<float>("cos", w1, 1, 2, 1, 0, rng);
    sin_head = Conv2d<float>("sin", w1, 1, 2, 1, 0, rng);
    width_head = Conv2d<float>("width", w1, 1, 2, 1, 0, rng);
  }
};

GrConvNet::GrConvNet(const ModelConfig& config) : config_(config) {
  config_.validate();
  std::mt19937_64 rng(config_.init_seed);
  layers_ = std::make_unique<Layers>(config_, rng);
  dropout_rng_.seed(config_.init_seed ^ 0xd1b54a32d192ed03ULL);
}

GrConvNet::GrConvNet(GrConvNet&&) noexcept = default;
GrConvNet& GrConvNet::operator=(GrConvNet&&) noexcept = default;
GrConvNet::~GrConvNet() = default;

ad::Tensor<float> GrConvNet::stem(const ad::Tensor<float>& image, ad::Mode mode) {
  if (!image.defined() || image.rank() != 4) throw ShapeError("model input must be B x n x S x S");
  if (image.dim(1) != config_.input_channels) {
    throw ConfigMismatchError("model expects " + std::to_string(config_.input_channels) +
                              " input channels, got " + std::to_string(image.dim(1)));
  }
  if (image.dim(2) != config_.input_size || image.dim(3) != config_.input_size) {
    throw ShapeError("model expects " + std::to_string(config_.input_size) + "x" +
                     std::to_string(config_.input_size) + " input, got " + ad::to_string(image.shape()));
  }
  Layers& l = *layers_;
  auto x = ad::relu(l.bn1(l.conv1(image), mode));
  x = ad::relu(l.bn2(l.conv2(x), mode));
  return ad::relu(l.bn3(l.conv3(x), mode));
}

GraspMapsTensor GrConvNet::forward(const ad::Tensor<float>& image, ad::Mode mode) {
  const auto start = std::chrono::steady_clock::now();
  Layers& l = *layers_;
  auto x = stem(image, mode);
  for (auto& block : l.residual) x = block(x, mode);
  x = ad::relu(l.bn4(l.conv4(x), mode));
  x = ad::relu(l.bn5(l.conv5(x), mode));
  x = l.conv6(x);

  const auto rate = static_cast<float>(config_.dropout_rate);
  auto head = [&](const Conv2d<float>& conv) { return conv(ad::dropout(x, rate, mode, dropout_rng_)); };
  GraspMapsTensor maps{ad::sigmoid(head(l.quality_head)), ad::tanh(head(l.cos_head)),
                       ad::tanh(head(l.sin_head)), ad::sigmoid(head(l.width_head))};

  last_forward_ms_ =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  spdlog::debug("forward {} batch={} took {:.2f} ms", mode == ad::Mode::kTrain ? "train" : "eval",
                image.dim(0), last_forward_ms_);
  return maps;
}

std::vector<ad::Parameter<float>*> GrConvNet::parameters() {
  Layers& l = *layers_;
  std::vector<ad::Parameter<float>*> out;
  l.conv1.collect(out);
  l.bn1.collect(out);
  l.conv2.collect(out);
  l.bn2.collect(out);
  l.conv3.collect(out);
  l.bn3.collect(out);
  for (auto& block : l.residual) block.collect(out);
  l.conv4.collect(out);
  l.bn4.collect(out);
  l.conv5.collect(out);
  l.bn5.collect(out);
  l.conv6.collect(out);
  l.quality_head.collect(out);
  l.cos_head.collect(out);
  l.sin_head.collect(out);
  l.width_head.collect(out);
  return out;
}

std::vector<NamedStats<float>> GrConvNet::running_stats() {
  Layers& l = *layers_;
  std::vector<NamedStats<float>> out;
  l.bn1.collect_stats(out);
  l.bn2.collect_stats(out);
  l.bn3.collect_stats(out);
  for (auto& block : l.residual) block.collect_stats(out);
  l.bn4.collect_stats(out);
  l.bn5.collect_stats(out);
  return out;
}

std::size_t GrConvNet::param_count() {
  std::size_t total = 0;
  for (const auto* p : parameters()) total += p->tensor.numel();
  return total;
}

}  // namespace graspforge::model
