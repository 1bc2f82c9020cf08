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

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "graspforge/geometry/transforms.hpp"

namespace graspforge::sim {

/// Corresponding (camera-frame, robot-frame) points.
struct CalibrationSet {
  std::vector<std::pair<Eigen::Vector3d, Eigen::Vector3d>> pairs;
};

struct CalibrationResult {
  geometry::HandEyeTransform transform;
  double rms_residual = 0.0;  // meters
};

/// Least-squares rigid transform (orthogonal Procrustes via the SVD of the
/// cross-covariance, with det = +1 enforced). Throws InvalidArgument for
/// fewer than three pairs and DegenerateGeometryError for collinear points.
CalibrationResult solve_calibration(const CalibrationSet& set);

}  // namespace graspforge::sim
