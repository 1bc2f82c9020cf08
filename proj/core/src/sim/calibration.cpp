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

#include "graspforge/sim/calibration.hpp"

#include <cmath>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "graspforge/errors.hpp"

namespace graspforge::sim {

CalibrationResult solve_calibration(const CalibrationSet& set) {
  const auto n = set.pairs.size();
  if (n < 3) throw InvalidArgument("calibration needs at least 3 point pairs, got " + std::to_string(n));
  Eigen::Vector3d mean_c = Eigen::Vector3d::Zero(), mean_r = Eigen::Vector3d::Zero();
  for (const auto& [c, r] : set.pairs) {
    if (!c.allFinite() || !r.allFinite()) throw InvalidArgument("calibration points must be finite");
    mean_c += c;
    mean_r += r;
  }
  mean_c /= static_cast<double>(n);
  mean_r /= static_cast<double>(n);

  Eigen::Matrix3d cov_c = Eigen::Matrix3d::Zero(), cross = Eigen::Matrix3d::Zero();
  for (const auto& [c, r] : set.pairs) {
    const Eigen::Vector3d dc = c - mean_c, dr = r - mean_r;
    cov_c += dc * dc.transpose();
    cross += dc * dr.transpose();
  }
  const Eigen::JacobiSVD<Eigen::Matrix3d> shape(cov_c);
  const auto spread = shape.singularValues();
  if (!(spread(0) > 0.0) || spread(1) <= 1e-12 * spread(0)) {
    throw DegenerateGeometryError("calibration points are collinear or coincident");
  }

  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Matrix3d u = svd.matrixU(), v = svd.matrixV();
  Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
  d(2, 2) = (v * u.transpose()).determinant() < 0.0 ? -1.0 : 1.0;

  CalibrationResult result;
  result.transform.rotation = v * d * u.transpose();
  result.transform.translation = mean_r - result.transform.rotation * mean_c;
  double sq = 0.0;
  for (const auto& [c, r] : set.pairs) sq += (result.transform.apply(c) - r).squaredNorm();
  result.rms_residual = std::sqrt(sq / static_cast<double>(n));
  return result;
}

}  // namespace graspforge::sim
