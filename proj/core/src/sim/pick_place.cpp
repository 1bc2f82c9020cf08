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

#include "graspforge/sim/pick_place.hpp"

#include <cmath>

#include <spdlog/spdlog.h>

#include "graspforge/dataset/sample.hpp"
#include "graspforge/errors.hpp"
#include "graspforge/geometry/transforms.hpp"
#include "graspforge/train/evaluate.hpp"

namespace graspforge::sim {

bool Workspace::contains(const Eigen::Vector3d& p) const {
  return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
}

SimScene make_sim_scene(dataset::SynthScene scene) {
  SimScene sim;
  const auto k = scene.intrinsics();
  const auto hand_eye = scene.hand_eye();
  const auto& st = scene.settings;
  auto lift = [&](geometry::Point2 p, double z) {
    const Eigen::Vector3d robot = hand_eye.apply({(p.x - k.cx) * z / k.fx, (p.y - k.cy) * z / k.fy, z});
    return robot;
  };
  for (const auto& o : scene.objects) {
    geometry::ConvexObject world;
    const double z = st.table_depth_m - o.height_m;
    for (const auto& part : o.shape.parts) {
      geometry::Polygon poly;
      for (const auto& p : part) {
        const auto r = lift(p, z);
        poly.push_back({r.x(), r.y()});
      }
      world.parts.push_back(std::move(poly));
    }
    sim.world_objects.push_back(std::move(world));
  }
  const auto px_gripper = st.gripper();
  const double m_per_px = st.table_depth_m / k.fx;
  sim.gripper = {px_gripper.max_opening * m_per_px, px_gripper.finger_thickness * m_per_px};

  const double s = st.image_size;
  Eigen::Vector3d lo = Eigen::Vector3d::Constant(1e9), hi = Eigen::Vector3d::Constant(-1e9);
  for (const geometry::Point2 corner : {geometry::Point2{-0.5, -0.5}, geometry::Point2{s - 0.5, -0.5},
                                        geometry::Point2{-0.5, s - 0.5}, geometry::Point2{s - 0.5, s - 0.5}}) {
    const auto r = lift(corner, st.table_depth_m);
    lo = lo.cwiseMin(r);
    hi = hi.cwiseMax(r);
  }
  sim.workspace.min = {lo.x(), lo.y(), lo.z() - 0.05};
  sim.workspace.max = {hi.x(), hi.y(), lo.z() + 0.30};
  sim.synth = std::move(scene);
  return sim;
}

PickResult plan_pick(const geometry::RobotGrasp& grasp, const SimScene& scene) {
  if (!grasp.position.allFinite() || !scene.workspace.contains(grasp.position)) {
    throw OutOfWorkspaceError("grasp position (" + std::to_string(grasp.position.x()) + ", " +
                              std::to_string(grasp.position.y()) + ", " + std::to_string(grasp.position.z()) +
                              ") is outside the workspace");
  }
  PickResult result;
  result.approach_position = grasp.position + Eigen::Vector3d(0.0, 0.0, kApproachHeight);
  result.approach_theta = grasp.theta;
  const auto closure = geometry::check_closure({grasp.position.x(), grasp.position.y()}, grasp.theta, grasp.width,
                                               scene.world_objects, scene.gripper);
  result.success = closure.success;
  result.reason = closure.reason;
  result.object_index = closure.object_index;
  return result;
}

void to_json(nlohmann::json& j, const AttemptRecord& r) {
  j = {{"attempt", r.attempt},
       {"grasp_rank", r.grasp_rank},
       {"success", r.success},
       {"reason", r.reason},
       {"object_index", r.object_index},
       {"pixel", {{"x", r.pixel.x}, {"y", r.pixel.y}, {"theta_rad", r.pixel.theta}, {"width_px", r.pixel.width},
                  {"quality", r.pixel.quality}}},
       {"robot", {{"X", r.robot.position.x()}, {"Y", r.robot.position.y()}, {"Z", r.robot.position.z()},
                  {"theta_r_rad", r.robot.theta}, {"width_m", r.robot.width}}}};
}

void to_json(nlohmann::json& j, const TrialReport& r) {
  j = {{"seed", r.seed},
       {"num_objects", r.num_objects},
       {"attempts", r.attempts},
       {"successes", r.successes},
       {"objects_remaining", r.objects_remaining},
       {"success_rate", r.success_rate()},
       {"records", r.records}};
}

TrialReport run_clutter_trial(model::Checkpoint& checkpoint, const TrialOptions& options) {
  if (options.max_attempts < 0) throw InvalidArgument("max_attempts must be >= 0");
  const auto modality = checkpoint.meta.modality.empty() ? dataset::Modality::kRgbd
                                                         : dataset::modality_from_string(checkpoint.meta.modality);
  dataset::SynthSettings settings;
  settings.image_size = checkpoint.model.config().input_size;
  settings.kinds = options.kinds;

  TrialReport report;
  report.seed = options.seed;
  report.num_objects = options.num_objects;
  SimScene scene = make_sim_scene(dataset::generate_scene(options.seed, options.num_objects, settings));
  int rank = 0;
  while (!scene.synth.objects.empty() && report.attempts < options.max_attempts) {
    AttemptRecord rec;
    rec.attempt = ++report.attempts;
    rec.grasp_rank = rank;
    const auto prediction = train::predict(checkpoint.model, scene.synth.sample, modality, checkpoint.meta.w_max, rank + 1);
    if (prediction.grasps.size() <= static_cast<std::size_t>(rank)) {
      rec.reason = prediction.grasps.empty() ? "no grasp detected" : "no further grasp candidates";
      report.records.push_back(rec);
      ++rank;
      continue;
    }
    rec.pixel = prediction.grasps[static_cast<std::size_t>(rank)];
    try {
      rec.robot = geometry::image_to_robot(rec.pixel, *scene.synth.sample.depth, scene.synth.intrinsics(),
                                           scene.synth.hand_eye());
      const auto pick = plan_pick(rec.robot, scene);
      rec.success = pick.success;
      rec.reason = pick.reason;
      rec.object_index = pick.object_index;
    } catch (const OutOfWorkspaceError& e) {
      rec.reason = "out of workspace";
    }
    report.records.push_back(rec);
    if (rec.success) {
      ++report.successes;
      scene = make_sim_scene(dataset::remove_object(scene.synth, static_cast<std::size_t>(rec.object_index)));
      rank = 0;
    } else {
      ++rank;
    }
  }
  report.objects_remaining = static_cast<int>(scene.synth.objects.size());
  spdlog::debug("trial seed {}: {}/{} successes", options.seed, report.successes, report.attempts);
  return report;
}

}  // namespace graspforge::sim
