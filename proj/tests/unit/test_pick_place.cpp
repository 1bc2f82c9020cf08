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

#include <numbers>

#include <gtest/gtest.h>

#include "graspforge/errors.hpp"
#include "graspforge/geometry/transforms.hpp"
#include "graspforge/sim/pick_place.hpp"

namespace graspforge::sim {
namespace {

constexpr double kPi = std::numbers::pi;

SimScene bar_scene() {
  dataset::SynthSettings settings;
  const auto scene = dataset::render_scene({dataset::make_bar({32, 32}, 0.0, 30, 8, settings.grasp_margin())},
                                           settings, 1);
  return make_sim_scene(scene);
}

geometry::RobotGrasp to_robot(const SimScene& s, geometry::PixelGrasp g) {
  return geometry::image_to_robot(g, *s.synth.sample.depth, s.synth.intrinsics(), s.synth.hand_eye());
}

TEST(SimScene, WorldOutlineHasMetricSize) {
  const auto s = bar_scene();
  ASSERT_EQ(s.world_objects.size(), 1u);
  const auto& poly = s.world_objects[0].parts[0];
  const auto k = s.synth.intrinsics();
  const double z = s.synth.settings.table_depth_m - s.synth.objects[0].height_m;
  double longest = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    longest = std::max(longest, std::hypot(a.x - b.x, a.y - b.y));
  }
  EXPECT_NEAR(longest, 30 * z / k.fx, 1e-9);
  EXPECT_GT(s.gripper.max_opening, 0.0);
}

TEST(PlanPick, AcrossTheBarSucceeds) {
  const auto s = bar_scene();
  const auto robot = to_robot(s, {32, 32, kPi / 2, 14, 1});
  const auto r = plan_pick(robot, s);
  EXPECT_TRUE(r.success) << r.reason;
  EXPECT_EQ(r.object_index, 0);
  EXPECT_NEAR(r.approach_position.z() - robot.position.z(), kApproachHeight, 1e-12);
  EXPECT_EQ(r.approach_theta, robot.theta);
}

TEST(PlanPick, AlongTheBarFailsWithReason) {
  const auto s = bar_scene();
  const auto r = plan_pick(to_robot(s, {32, 32, 0.0, 14, 1}), s);
  EXPECT_FALSE(r.success);
  EXPECT_FALSE(r.reason.empty());
  const auto empty = plan_pick(to_robot(s, {8, 8, 0.0, 14, 1}), s);
  EXPECT_EQ(empty.reason, "no object between fingers");
}

TEST(PlanPick, OutsideWorkspaceThrows) {
  const auto s = bar_scene();
  geometry::RobotGrasp g;
  g.position = {10, 10, 10};
  g.width = 0.01;
  EXPECT_THROW(plan_pick(g, s), OutOfWorkspaceError);
}

model::Checkpoint small_checkpoint() {
  model::ModelConfig c;
  c.input_size = 64;
  c.base_width = 4;
  c.num_residual_blocks = 1;
  model::Checkpoint ck{model::GrConvNet(c), {}};
  ck.meta.modality = "rgbd";
  ck.meta.w_max = 150.0 * 64 / 224;
  return ck;
}

TEST(ClutterTrial, EmptySceneNeedsNoAttempts) {
  auto ck = small_checkpoint();
  TrialOptions opt;
  opt.num_objects = 0;
  const auto r = run_clutter_trial(ck, opt);
  EXPECT_EQ(r.attempts, 0);
  EXPECT_EQ(r.objects_remaining, 0);
  EXPECT_EQ(r.success_rate(), 0.0);
}

TEST(ClutterTrial, AccountingAndReproducibility) {
  auto ck = small_checkpoint();
  TrialOptions opt;
  opt.seed = 17;
  opt.num_objects = 5;
  opt.max_attempts = 6;
  const auto a = run_clutter_trial(ck, opt);
  const auto b = run_clutter_trial(ck, opt);
  EXPECT_LE(a.attempts, 6);
  EXPECT_EQ(a.records.size(), static_cast<std::size_t>(a.attempts));
  EXPECT_EQ(a.successes + a.objects_remaining, 5);
  int successes = 0;
  for (const auto& rec : a.records) {
    successes += rec.success;
    if (!rec.success) {
      EXPECT_FALSE(rec.reason.empty());
    }
  }
  EXPECT_EQ(successes, a.successes);
  EXPECT_EQ(nlohmann::json(a).dump(), nlohmann::json(b).dump());
  EXPECT_THROW(run_clutter_trial(ck, TrialOptions{0, 1, -1}), InvalidArgument);
}

}  // namespace
}  // namespace graspforge::sim
