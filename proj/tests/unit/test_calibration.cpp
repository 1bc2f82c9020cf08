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
#include <random>

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include "graspforge/errors.hpp"
#include "graspforge/sim/calibration.hpp"

namespace graspforge::sim {
namespace {

geometry::HandEyeTransform make_transform(const Eigen::Matrix3d& r, const Eigen::Vector3d& t) {
  geometry::HandEyeTransform x;
  x.rotation = r;
  x.translation = t;
  return x;
}

CalibrationSet make_set(const geometry::HandEyeTransform& truth, int n, std::uint64_t seed, double noise = 0.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  std::normal_distribution<double> g(0.0, noise > 0 ? noise : 1.0);
  CalibrationSet set;
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector3d cam(u(rng), u(rng), 0.5 + u(rng));
    Eigen::Vector3d robot = truth.rotation * cam + truth.translation;
    if (noise > 0) robot += Eigen::Vector3d(g(rng), g(rng), g(rng));
    set.pairs.emplace_back(cam, robot);
  }
  return set;
}

TEST(Calibration, RecoversExactTransforms) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n;
  std::vector<Eigen::Matrix3d> rotations{
      Eigen::Matrix3d::Identity(),
      Eigen::AngleAxisd(std::numbers::pi, Eigen::Vector3d::UnitX()).toRotationMatrix(),
      Eigen::AngleAxisd(std::numbers::pi, Eigen::Vector3d(1, 1, 0).normalized()).toRotationMatrix()};
  for (int i = 0; i < 20; ++i) rotations.push_back(Eigen::Quaterniond(n(rng), n(rng), n(rng), n(rng)).normalized().toRotationMatrix());
  for (const auto& r : rotations) {
    const auto truth = make_transform(r, {n(rng), n(rng), n(rng)});
    const auto result = solve_calibration(make_set(truth, 8, 1));
    EXPECT_LT((result.transform.rotation - r).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((result.transform.translation - truth.translation).norm(), 1e-9);
    EXPECT_LT(result.rms_residual, 1e-9);
    EXPECT_NEAR(result.transform.rotation.determinant(), 1.0, 1e-12);
  }
}

TEST(Calibration, MinimalThreePairs) {
  const auto truth = make_transform(Eigen::AngleAxisd(0.7, Eigen::Vector3d::UnitZ()).toRotationMatrix(), {0.1, 0, 0.4});
  const auto result = solve_calibration(make_set(truth, 3, 2));
  EXPECT_LT((result.transform.rotation - truth.rotation).norm(), 1e-9);
}

TEST(Calibration, NoisyPairsStayWithinNoiseLevel) {
  const auto truth = make_transform(Eigen::AngleAxisd(-1.1, Eigen::Vector3d(0.2, 0.5, 1).normalized()).toRotationMatrix(),
                                    {0.4, -0.2, 0.7});
  const auto result = solve_calibration(make_set(truth, 40, 3, 0.001));
  EXPECT_LE(result.rms_residual, 0.003);
  EXPECT_LT((result.transform.translation - truth.translation).norm(), 0.003);
}

TEST(Calibration, DegenerateInputsRejected) {
  CalibrationSet two;
  two.pairs = {{{0, 0, 0}, {0, 0, 0}}, {{1, 0, 0}, {1, 0, 0}}};
  EXPECT_THROW(solve_calibration(two), InvalidArgument);
  CalibrationSet line;
  for (int i = 0; i < 6; ++i) line.pairs.emplace_back(Eigen::Vector3d(i, 2.0 * i, 0), Eigen::Vector3d(i, 2.0 * i, 1));
  EXPECT_THROW(solve_calibration(line), DegenerateGeometryError);
}

}  // namespace
}  // namespace graspforge::sim
