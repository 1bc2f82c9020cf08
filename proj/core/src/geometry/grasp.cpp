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

#include "graspforge/geometry/grasp.hpp"

#include <algorithm>
#include <cmath>

#include "graspforge/errors.hpp"

namespace graspforge::geometry {

namespace {
constexpr double kPi = std::numbers::pi;

double cross(const Point2& a, const Point2& b, const Point2& p) {
  return (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
}

Point2 intersect(const Point2& p, const Point2& q, const Point2& a, const Point2& b) {
  const double cp = cross(a, b, p);
  const double cq = cross(a, b, q);
  const double t = cp / (cp - cq);
  return {p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
}
}  // namespace

AngleCode encode_angle(double theta) { return {std::cos(2.0 * theta), std::sin(2.0 * theta)}; }

double decode_angle(double cos2t, double sin2t) {
  if (cos2t == 0.0 && sin2t == 0.0) throw InvalidArgument("decode_angle is undefined at (0, 0)");
  return normalize_angle(0.5 * std::atan2(sin2t, cos2t));
}

double normalize_angle(double theta) {
  double t = std::fmod(theta, kPi);
  if (t > kPi / 2.0) t -= kPi;
  if (t <= -kPi / 2.0) t += kPi;
  return t;
}

double angle_difference(double a, double b) {
  const double d = std::abs(normalize_angle(a - b));
  return std::min(d, kPi - d);
}

std::array<Point2, 4> GraspRectangle::corners() const {
  const double ux = std::cos(theta), uy = std::sin(theta);
  const double vx = -uy, vy = ux;
  const double hw = width / 2.0, hh = height / 2.0;
  return {{{center.x - hw * ux - hh * vx, center.y - hw * uy - hh * vy},
           {center.x + hw * ux - hh * vx, center.y + hw * uy - hh * vy},
           {center.x + hw * ux + hh * vx, center.y + hw * uy + hh * vy},
           {center.x - hw * ux + hh * vx, center.y - hw * uy + hh * vy}}};
}

void GraspRectangle::validate() const {
  if (!(width > 0.0) || !(height > 0.0) || !std::isfinite(width) || !std::isfinite(height) ||
      !std::isfinite(center.x) || !std::isfinite(center.y) || !std::isfinite(theta)) {
    throw InvalidArgument("degenerate grasp rectangle (width " + std::to_string(width) + ", height " +
                          std::to_string(height) + ")");
  }
}

GraspRectangle GraspRectangle::from_corners(const std::array<Point2, 4>& c) {
  GraspRectangle r;
  r.center = {(c[0].x + c[1].x + c[2].x + c[3].x) / 4.0, (c[0].y + c[1].y + c[2].y + c[3].y) / 4.0};
  const double dx = c[1].x - c[0].x, dy = c[1].y - c[0].y;
  r.width = std::hypot(dx, dy);
  r.height = std::hypot(c[2].x - c[1].x, c[2].y - c[1].y);
  r.theta = normalize_angle(std::atan2(dy, dx));
  return r;
}

GraspRectangle to_rectangle(const PixelGrasp& grasp, double height_ratio) {
  return {{grasp.x, grasp.y}, normalize_angle(grasp.theta), grasp.width, height_ratio * grasp.width};
}

double polygon_area(std::span<const Point2> polygon) {
  double twice = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Point2& a = polygon[i];
    const Point2& b = polygon[(i + 1) % polygon.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return twice / 2.0;
}

std::vector<Point2> clip_convex(std::span<const Point2> subject, std::span<const Point2> clip) {
  std::vector<Point2> output(subject.begin(), subject.end());
  for (std::size_t e = 0; e < clip.size() && !output.empty(); ++e) {
    const Point2& a = clip[e];
    const Point2& b = clip[(e + 1) % clip.size()];
    const std::vector<Point2> input = std::move(output);
    output.clear();
    for (std::size_t i = 0; i < input.size(); ++i) {
      const Point2& p = input[i];
      const Point2& q = input[(i + 1) % input.size()];
      const bool p_in = cross(a, b, p) >= 0.0;
      const bool q_in = cross(a, b, q) >= 0.0;
      if (p_in) output.push_back(p);
      if (p_in != q_in) output.push_back(intersect(p, q, a, b));
    }
  }
  return output;
}

double rect_iou(const GraspRectangle& a, const GraspRectangle& b) {
  a.validate();
  b.validate();
  const auto pa = a.corners();
  const auto pb = b.corners();
  const auto overlap = clip_convex(pa, pb);
  const double inter = overlap.size() < 3 ? 0.0 : std::max(0.0, polygon_area(overlap));
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? std::clamp(inter / uni, 0.0, 1.0) : 0.0;
}

MatchDetail match_detail(const GraspRectangle& prediction, std::span<const GraspRectangle> truths,
                         const MatchThresholds& thresholds) {
  MatchDetail detail;
  for (const auto& truth : truths) {
    const double iou = rect_iou(prediction, truth);
    const double dtheta = angle_difference(prediction.theta, truth.theta);
    if (iou > thresholds.min_iou && dtheta < thresholds.max_angle) detail.matched = true;
    if (iou > detail.best_iou) {
      detail.best_iou = iou;
      detail.best_angle_error = dtheta;
    }
  }
  return detail;
}

bool metric_match(const GraspRectangle& prediction, std::span<const GraspRectangle> truths,
                  const MatchThresholds& thresholds) {
  if (truths.empty()) throw InvalidArgument("metric_match needs at least one ground-truth rectangle");
  return match_detail(prediction, truths, thresholds).matched;
}

}  // namespace graspforge::geometry
