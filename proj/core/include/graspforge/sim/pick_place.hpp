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
#include <string>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "graspforge/dataset/synthetic.hpp"
#include "graspforge/geometry/closure.hpp"
#include "graspforge/model/checkpoint.hpp"

namespace graspforge::sim {

struct Workspace {
  Eigen::Vector3d min = Eigen::Vector3d::Constant(-1.0);
  Eigen::Vector3d max = Eigen::Vector3d::Constant(1.0);

  bool contains(const Eigen::Vector3d& p) const;
};

/// A synthetic scene lifted into the robot frame. Object outlines are the
/// pixel polygons back-projected at each object's top depth.
struct SimScene {
  dataset::SynthScene synth;
  std::vector<geometry::ConvexObject> world_objects;  // robot XY, meters
  geometry::GripperGeometry gripper;                  // meters
  Workspace workspace;
};

SimScene make_sim_scene(dataset::SynthScene scene);

struct PickResult {
  bool success = false;
  std::string reason;  // empty on success
  int object_index = -1;
  // Pre-grasp pose above the target, same orientation.
  Eigen::Vector3d approach_position = Eigen::Vector3d::Zero();
  double approach_theta = 0.0;
};

inline constexpr double kApproachHeight = 0.10;

/// Analytic closure check of a robot-frame grasp (see check_closure).
/// Throws OutOfWorkspaceError when the position leaves the workspace.
PickResult plan_pick(const geometry::RobotGrasp& grasp, const SimScene& scene);

struct TrialOptions {
  std::uint64_t seed = 0;
  int num_objects = 1;
  int max_attempts = 10;
  // Shapes the trial scene draws from.
  std::vector<dataset::ShapeKind> kinds{dataset::ShapeKind::kBar, dataset::ShapeKind::kTShape,
                                        dataset::ShapeKind::kFlatDisk};
};

struct AttemptRecord {
  int attempt = 0;  // 1-based
  int grasp_rank = 0;
  bool success = false;
  std::string reason;
  int object_index = -1;
  geometry::PixelGrasp pixel;
  geometry::RobotGrasp robot;
};

struct TrialReport {
  std::uint64_t seed = 0;
  int num_objects = 0;
  int attempts = 0;
  int successes = 0;
  int objects_remaining = 0;
  std::vector<AttemptRecord> records;

  double success_rate() const { return attempts ? static_cast<double>(successes) / attempts : 0.0; }
};

void to_json(nlohmann::json& j, const AttemptRecord& r);
void to_json(nlohmann::json& j, const TrialReport& r);

/// Clutter-clearing loop: render, predict, transform the chosen grasp to the
/// robot frame, plan_pick, remove the object on success. After a failure the
/// next-ranked grasp of the same scene is tried. Stops when the scene is
/// empty or the attempts run out.
TrialReport run_clutter_trial(model::Checkpoint& checkpoint, const TrialOptions& options);

}  // namespace graspforge::sim
