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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "graspforge/dataset/sample.hpp"
#include "graspforge/geometry/closure.hpp"
#include "graspforge/geometry/transforms.hpp"

namespace graspforge::dataset {

enum class ShapeKind { kBar, kTShape, kFlatDisk };

std::string to_string(ShapeKind kind);
ShapeKind shape_kind_from_string(const std::string& name);

/// A flat-topped prism seen from above, in pixel coordinates.
struct SynthObject {
  ShapeKind kind = ShapeKind::kBar;
  geometry::ConvexObject shape;
  geometry::Point2 center;
  double radius = 0.0;  // bounding circle about center
  // Grasps across opposing parallel faces, before clutter filtering.
  std::vector<geometry::GraspRectangle> candidates;
  double height_m = 0.03;
  std::array<std::uint8_t, 3> color{200, 60, 60};
};

/// Scene-level constants. Lengths are pixels at the given image size and
/// scale with image_size / 64.
struct SynthSettings {
  int image_size = 64;
  double table_depth_m = 0.60;
  double rgb_noise = 3.0;
  double depth_noise_m = 0.0005;
  // Shapes random scenes draw from, uniformly.
  std::vector<ShapeKind> kinds{ShapeKind::kBar, ShapeKind::kTShape, ShapeKind::kFlatDisk};

  double unit() const { return image_size / 64.0; }
  double grasp_margin() const { return 6.0 * unit(); }
  geometry::GripperGeometry gripper() const { return {24.0 * unit(), 2.0 * unit()}; }
  geometry::CameraIntrinsics intrinsics() const;
};

/// Fixed camera-to-robot transform: camera 0.6 m above the robot base,
/// looking straight down.
geometry::HandEyeTransform synth_hand_eye();

SynthObject make_bar(geometry::Point2 center, double axis_angle, double length, double thickness, double margin);
SynthObject make_t_shape(geometry::Point2 center, double axis_angle, double bar_length, double bar_thickness,
                         double stem_length, double stem_thickness, double margin);
SynthObject make_flat_disk(geometry::Point2 center, double flat_normal_angle, double radius, double half_gap,
                           double margin);

struct SynthScene {
  Sample sample;
  std::vector<SynthObject> objects;
  SynthSettings settings;
  std::uint64_t noise_seed = 0;
  std::array<std::uint8_t, 3> background{180, 170, 150};

  geometry::CameraIntrinsics intrinsics() const { return settings.intrinsics(); }
  geometry::HandEyeTransform hand_eye() const { return synth_hand_eye(); }
};

/// Candidate grasps of every object that pass the closure test against the
/// whole scene and stay inside the image.
std::vector<geometry::GraspRectangle> analytic_grasps(const std::vector<SynthObject>& objects,
                                                      const SynthSettings& settings);

/// Renders RGB, depth and ground truth for a fixed object list.
SynthScene render_scene(std::vector<SynthObject> objects, const SynthSettings& settings, std::uint64_t noise_seed,
                        std::array<std::uint8_t, 3> background = {180, 170, 150}, const std::string& id = "scene");

/// Random scene of 1..5 disjoint objects (bars, T-shapes, disks with flats).
/// Fully determined by (seed, settings, num_objects).
SynthScene generate_scene(std::uint64_t seed, int num_objects, const SynthSettings& settings = {});

/// Scene without object `index`, re-rendered with the same noise.
SynthScene remove_object(const SynthScene& scene, std::size_t index);

Sample synth_scene(std::uint64_t seed, int image_size, int num_objects);

/// `count` scenes; scene i uses a seed derived from (seed, i) and draws its
/// object count uniformly from [min_objects, max_objects].
std::vector<SynthScene> synth_dataset(std::size_t count, std::uint64_t seed, const SynthSettings& settings,
                                      int min_objects = 1, int max_objects = 3);

}  // namespace graspforge::dataset
