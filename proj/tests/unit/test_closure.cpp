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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "graspforge/geometry/closure.hpp"

namespace graspforge::geometry {
namespace {

constexpr double kPi = std::numbers::pi;

Polygon box(double cx, double cy, double half_w, double half_h) {
  return {{cx - half_w, cy - half_h}, {cx + half_w, cy - half_h}, {cx + half_w, cy + half_h}, {cx - half_w, cy + half_h}};
}

const GripperGeometry kGripper{24.0, 2.0};

// Horizontal bar 30 long, 8 thick, centred at (50, 50).
std::vector<ConvexObject> bar_scene() { return {ConvexObject{{box(50, 50, 15, 4)}}}; }

TEST(Closure, AcrossShortAxisSucceeds) {
  const auto objs = bar_scene();
  const auto r = check_closure({50, 50}, kPi / 2, 16, objs, kGripper);
  EXPECT_TRUE(r.success) << r.reason;
  EXPECT_EQ(r.object_index, 0);
  EXPECT_TRUE(r.reason.empty());
}

TEST(Closure, AlongBarIsNonAntipodal) {
  const auto objs = bar_scene();
  const auto r = check_closure({50, 50}, 0.0, 16, objs, kGripper);
  EXPECT_FALSE(r.success);
  EXPECT_EQ(r.reason, "non-antipodal contact");
}

TEST(Closure, TooWideExceedsGripper) {
  const auto objs = bar_scene();
  const auto r = check_closure({50, 50}, kPi / 2, 30, objs, kGripper);
  EXPECT_FALSE(r.success);
  EXPECT_EQ(r.reason, "exceeds gripper");
}

TEST(Closure, EmptySpaceHasNoObject) {
  const auto objs = bar_scene();
  const auto r = check_closure({10, 10}, 0.0, 16, objs, kGripper);
  EXPECT_FALSE(r.success);
  EXPECT_EQ(r.reason, "no object between fingers");
}

TEST(Closure, TwoObjectsBetweenFingers) {
  const std::vector<ConvexObject> objs{ConvexObject{{box(45, 50, 2, 6)}}, ConvexObject{{box(55, 50, 2, 6)}}};
  const auto r = check_closure({50, 50}, 0.0, 22, objs, kGripper);
  EXPECT_FALSE(r.success);
  EXPECT_EQ(r.reason, "multiple objects between fingers");
}

TEST(Closure, ObliqueContactBeyondToleranceFails) {
  const auto objs = bar_scene();
  // 35 degrees off the face normal.
  EXPECT_FALSE(check_closure({50, 50}, kPi / 2 - 35 * kPi / 180, 20, objs, kGripper).success);
  EXPECT_TRUE(check_closure({50, 50}, kPi / 2 - 20 * kPi / 180, 20, objs, kGripper).success);
}

TEST(Closure, FingerLandingOnObjectFails) {
  const auto objs = bar_scene();
  // Opening narrower than the bar thickness.
  EXPECT_FALSE(check_closure({50, 50}, kPi / 2, 6, objs, kGripper).success);
}

TEST(Closure, InvariantUnderRigidMotion) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ang(-kPi, kPi), off(-100, 100), th(-kPi / 2, kPi / 2), w(4, 28),
      p(38, 62);
  const std::vector<ConvexObject> objs{ConvexObject{{box(50, 50, 15, 4)}}, ConvexObject{{box(50, 70, 4, 4)}}};
  int successes = 0;
  for (int i = 0; i < 400; ++i) {
    const Point2 c{p(rng), p(rng)};
    const double theta = th(rng), width = w(rng);
    const auto ref = check_closure(c, theta, width, objs, kGripper);
    successes += ref.success;
    const double phi = ang(rng), tx = off(rng), ty = off(rng);
    auto move = [&](Point2 q) {
      return Point2{q.x * std::cos(phi) - q.y * std::sin(phi) + tx, q.x * std::sin(phi) + q.y * std::cos(phi) + ty};
    };
    std::vector<ConvexObject> moved;
    for (const auto& o : objs) {
      ConvexObject m;
      for (const auto& part : o.parts) {
        Polygon poly;
        for (const auto& q : part) poly.push_back(move(q));
        m.parts.push_back(poly);
      }
      moved.push_back(m);
    }
    const auto r = check_closure(move(c), theta + phi, width, moved, kGripper);
    EXPECT_EQ(r.success, ref.success) << i;
    EXPECT_EQ(r.reason, ref.reason) << i;
  }
  EXPECT_GT(successes, 0);
}

TEST(Closure, MultiPartObjectCountsOnce) {
  // A T-shape: crossbar plus stem, one object.
  const std::vector<ConvexObject> objs{ConvexObject{{box(50, 40, 15, 4), box(50, 52, 4, 8)}}};
  const auto r = check_closure({50, 54}, 0.0, 16, objs, kGripper);
  EXPECT_TRUE(r.success) << r.reason;
}

TEST(ConvexHelpers, PointInsideAndDistance) {
  const auto b = box(0, 0, 2, 1);
  EXPECT_TRUE(point_in_convex(b, {0.5, 0.5}));
  EXPECT_FALSE(point_in_convex(b, {3, 0}));
  EXPECT_NEAR(distance_to_convex(b, {5, 0}), 3.0, 1e-12);
  EXPECT_NEAR(distance_to_convex(b, {5, 5}), std::hypot(3.0, 4.0), 1e-12);
  EXPECT_EQ(distance_to_convex(b, {0, 0}), 0.0);
}

}  // namespace
}  // namespace graspforge::geometry
