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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <unistd.h>

#include "graspforge/errors.hpp"
#include "graspforge/model/checkpoint.hpp"
#include "graspforge/train/trainer.hpp"

namespace graspforge::train {
namespace {

namespace fs = std::filesystem;

TrainConfig tiny_config() {
  TrainConfig c = desk_config();
  c.model.input_size = 32;
  c.model.base_width = 4;
  c.model.num_residual_blocks = 1;
  c.model.dropout_rate = 0.0;
  c.synthetic.train_count = 8;
  c.synthetic.val_count = 4;
  c.batch_size = 4;
  c.epochs = 1;
  c.seeds = {1};
  return c;
}

model::GrConvNet initial_model(const TrainConfig& c, std::uint64_t seed) {
  auto mc = c.model;
  mc.init_seed = seed;
  return model::GrConvNet(mc);
}

std::size_t changed_tensors(model::GrConvNet& before, model::GrConvNet& after) {
  const auto a = before.parameters(), b = after.parameters();
  std::size_t changed = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    changed += !std::equal(a[i]->tensor.data().begin(), a[i]->tensor.data().end(), b[i]->tensor.data().begin());
  }
  return changed;
}

TEST(TrainConfig, JsonRoundTrip) {
  TrainConfig c = tiny_config();
  c.loss_weights.width = 2.5;
  c.split.mode = dataset::SplitMode::kObjectWise;
  c.augment = true;
  nlohmann::json j = c;
  TrainConfig back;
  from_json(j, back);
  EXPECT_EQ(back, c);
  TrainConfig defaults;
  from_json(nlohmann::json::object(), defaults);
  EXPECT_EQ(defaults, TrainConfig{});
}

TEST(TrainConfig, ValidationErrors) {
  TrainConfig c = tiny_config();
  c.modality = dataset::Modality::kDepth;
  EXPECT_THROW(c.validate(), ConfigMismatchError);
  c = tiny_config();
  c.seeds.clear();
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = tiny_config();
  c.batch_size = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = tiny_config();
  c.dataset = DatasetKind::kCornell;
  EXPECT_THROW(c.validate(), InvalidArgument);
  EXPECT_THROW(dataset_kind_from_string("imagenet"), InvalidArgument);
}

TEST(TrainConfig, WidthNormalisationScalesWithInput) {
  TrainConfig c;
  EXPECT_DOUBLE_EQ(c.resolved_w_max(), 150.0);
  c.model.input_size = 64;
  EXPECT_DOUBLE_EQ(c.resolved_w_max(), 150.0 * 64 / 224);
  c.w_max = 40;
  EXPECT_DOUBLE_EQ(c.resolved_w_max(), 40.0);
}

TEST(LoadTrainingData, SyntheticSetsAtModelSize) {
  const auto data = load_training_data(tiny_config());
  EXPECT_EQ(data.train.size(), 8u);
  EXPECT_EQ(data.val.size(), 4u);
  for (const auto& s : data.train) EXPECT_EQ(s.width(), 32);
}

TEST(Train, OneStepReachesAlmostEveryParameter) {
  TrainConfig c = tiny_config();
  c.max_steps = 1;
  const auto data = load_training_data(c);
  auto runs = train(c, data);
  ASSERT_EQ(runs.size(), 1u);
  EXPECT_EQ(runs[0].steps.size(), 1u);
  auto init = initial_model(c, 1);
  const std::size_t total = init.parameters().size();
  EXPECT_GE(static_cast<double>(changed_tensors(init, runs[0].best.model)) / total, 0.99);
}

TEST(Train, ZeroLearningRateLeavesParametersUnchanged) {
  TrainConfig c = tiny_config();
  c.learning_rate = 0.0;
  const auto data = load_training_data(c);
  auto runs = train(c, data);
  auto init = initial_model(c, 1);
  EXPECT_EQ(changed_tensors(init, runs[0].best.model), 0u);
  for (const auto& s : runs[0].steps) EXPECT_EQ(s.lr, 0.0);
}

TEST(Train, DeterministicForSeed) {
  TrainConfig c = tiny_config();
  c.max_steps = 3;
  const auto data = load_training_data(c);
  auto a = train(c, data), b = train(c, data);
  ASSERT_EQ(a[0].steps.size(), b[0].steps.size());
  for (std::size_t i = 0; i < a[0].steps.size(); ++i) EXPECT_EQ(a[0].steps[i].loss_total, b[0].steps[i].loss_total);
  EXPECT_EQ(changed_tensors(a[0].best.model, b[0].best.model), 0u);
}

TEST(Train, LogRowsAndOutputFiles) {
  TrainConfig c = tiny_config();
  c.max_steps = 2;
  const fs::path dir = fs::temp_directory_path() / ("gf_train_" + std::to_string(::getpid()));
  TrainOptions opt;
  opt.output_dir = dir;
  int callbacks = 0;
  opt.on_step = [&](const StepLog& row) {
    ++callbacks;
    EXPECT_GT(row.loss_total, 0.0);
    EXPECT_NEAR(row.loss_total, row.loss_q + row.loss_cos + row.loss_sin + row.loss_w, 1e-6 * row.loss_total);
  };
  train(c, load_training_data(c), opt);
  EXPECT_EQ(callbacks, 2);
  std::ifstream log(dir / "train_log.csv");
  std::string header;
  std::getline(log, header);
  EXPECT_EQ(header, kTrainLogHeader);
  EXPECT_TRUE(fs::exists(dir / "seed_1" / "best.grcn"));
  const auto ck = model::load_checkpoint(dir / "seed_1" / "best.grcn");
  EXPECT_EQ(ck.meta.seed, 1u);
  EXPECT_EQ(ck.meta.modality, "rgbd");
  fs::remove_all(dir);
}

TEST(Train, EmptyTrainingSetRejected) {
  TrainData empty;
  EXPECT_THROW(train(tiny_config(), empty), DataError);
}

TEST(Train, SmallSetLossDrops) {
  TrainConfig c = tiny_config();
  c.synthetic.train_count = 4;
  c.epochs = 40;
  c.learning_rate = 3e-3;
  const auto data = load_training_data(c);
  const auto runs = train(c, data);
  const auto& steps = runs[0].steps;
  ASSERT_GE(steps.size(), 40u);
  double first = 0, last = 0;
  for (int i = 0; i < 5; ++i) {
    first += steps[i].loss_total;
    last += steps[steps.size() - 1 - i].loss_total;
  }
  EXPECT_LT(last, 0.7 * first);
}

}  // namespace
}  // namespace graspforge::train
