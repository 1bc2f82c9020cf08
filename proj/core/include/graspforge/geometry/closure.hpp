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

#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "graspforge/geometry/grasp.hpp"

namespace graspforge::geometry {

using Polygon = std::vector<Point2>;

/// A rigid object made of one or more convex parts (either winding).
struct ConvexObject {
  std::vector<Polygon> parts;
};

struct GripperGeometry {
  double max_opening = 0.0;
  double finger_thickness = 0.0;
};

inline constexpr double kContactNormalTolerance = std::numbers::pi / 6.0;

struct ClosureResult {
  bool success = false;
  std::string reason;  // empty on success
  int object_index = -1;
};

/// Analytic two-finger closure test in the plane. The fingers start at
/// center -/+ (width/2)(cos theta, sin theta) and close towards each other.
/// Success requires: width within the gripper opening; exactly one object
/// between the fingers; both finger footprints clear of every object; and the
/// first and last contact edges with outward normals opposing their finger's
/// motion within `normal_tolerance`.
ClosureResult check_closure(Point2 center, double theta, double width, std::span<const ConvexObject> objects,
                            const GripperGeometry& gripper, double normal_tolerance = kContactNormalTolerance);

/// Whether p lies inside (or on) the convex polygon.
bool point_in_convex(const Polygon& polygon, Point2 p);

/// Euclidean distance from p to the polygon boundary (0 when inside).
double distance_to_convex(const Polygon& polygon, Point2 p);

}  // namespace graspforge::geometry
