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
#include <numbers>
#include <span>
#include <vector>

#include "graspforge/image.hpp"

namespace graspforge::geometry {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Double-angle encoding of an antipodal grasp orientation.
struct AngleCode {
  double cos2t = 1.0;
  double sin2t = 0.0;
};

/// Returns (cos 2θ, sin 2θ).
AngleCode encode_angle(double theta);

/// ½·atan2(sin2t, cos2t) in (−π/2, π/2]. Throws InvalidArgument at the origin.
double decode_angle(double cos2t, double sin2t);

/// Maps any angle onto its antipodal representative in (−π/2, π/2].
double normalize_angle(double theta);

/// Circular distance between two grasp orientations modulo π, in [0, π/2].
double angle_difference(double a, double b);

/// Grasp in image space. The gripper closes along (cos θ, sin θ) in pixel
/// coordinates (x right, y down).
struct PixelGrasp {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  double width = 0.0;  // gripper opening, pixels
  double quality = 0.0;
};

/// Oriented grasp rectangle. `width` runs along the closing direction,
/// `height` across it (finger span).
struct GraspRectangle {
  Point2 center;
  double theta = 0.0;
  double width = 0.0;
  double height = 0.0;

  /// p0 -> p1 runs along the closing direction, p1 -> p2 across it.
  std::array<Point2, 4> corners() const;
  double area() const { return width * height; }
  /// Throws InvalidArgument unless width and height are positive and finite.
  void validate() const;

  static GraspRectangle from_corners(const std::array<Point2, 4>& corners);
};

inline constexpr double kDefaultHeightRatio = 0.5;

GraspRectangle to_rectangle(const PixelGrasp& grasp, double height_ratio = kDefaultHeightRatio);

/// Signed shoelace area; positive for the corner order produced by corners().
double polygon_area(std::span<const Point2> polygon);

/// Sutherland-Hodgman clip of `subject` against the convex polygon `clip`
/// (both wound like GraspRectangle::corners()).
std::vector<Point2> clip_convex(std::span<const Point2> subject, std::span<const Point2> clip);

/// Exact intersection over union of two rectangles.
double rect_iou(const GraspRectangle& a, const GraspRectangle& b);

struct MatchThresholds {
  double min_iou = 0.25;                      // IoU must exceed this
  double max_angle = std::numbers::pi / 6.0;  // orientation offset must stay below this
};

/// True iff some truth has IoU > min_iou and angle offset < max_angle.
bool metric_match(const GraspRectangle& prediction, std::span<const GraspRectangle> truths,
                  const MatchThresholds& thresholds = {});

/// Per-sample evaluation record: the match verdict, the highest IoU over all
/// truths, and the angle offset to that highest-IoU truth.
struct MatchDetail {
  bool matched = false;
  double best_iou = 0.0;
  double best_angle_error = std::numbers::pi / 2.0;
};

MatchDetail match_detail(const GraspRectangle& prediction, std::span<const GraspRectangle> truths,
                         const MatchThresholds& thresholds = {});

}  // namespace graspforge::geometry
