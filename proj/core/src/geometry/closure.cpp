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

#include "graspforge/geometry/closure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "graspforge/errors.hpp"

namespace graspforge::geometry {

namespace {

double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
Point2 sub(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }

double orientation(const Polygon& polygon) { return polygon_area(polygon) >= 0.0 ? 1.0 : -1.0; }

struct Hit {
  double t = 0.0;
  Point2 normal;
};

// Intersections of segment a + t (b - a), t in [0, 1], with the polygon
// boundary, each with the crossed edge's outward unit normal.
std::vector<Hit> segment_hits(const Polygon& polygon, Point2 a, Point2 b) {
  std::vector<Hit> hits;
  const double sign = orientation(polygon);
  const Point2 d = sub(b, a);
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 p = polygon[i];
    const Point2 q = polygon[(i + 1) % n];
    const Point2 e = sub(q, p);
    const double denom = cross(d, e);
    if (std::abs(denom) < 1e-15) continue;
    const Point2 ap = sub(p, a);
    const double t = cross(ap, e) / denom;
    const double s = cross(ap, d) / denom;
    if (t < 0.0 || t > 1.0 || s < 0.0 || s > 1.0) continue;
    const double len = std::hypot(e.x, e.y);
    // Counter-clockwise polygons (positive area in x-right/y-down
    // coordinates as used by polygon_area) have outward normal (e.y, -e.x).
    hits.push_back({t, {sign * e.y / len, -sign * e.x / len}});
  }
  return hits;
}

double segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = sub(b, a);
  const double len2 = ab.x * ab.x + ab.y * ab.y;
  double t = len2 > 0.0 ? ((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * ab.x), p.y - (a.y + t * ab.y));
}

}  // namespace

bool point_in_convex(const Polygon& polygon, Point2 p) {
  if (polygon.size() < 3) return false;
  const double sign = orientation(polygon);
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (sign * cross(sub(polygon[(i + 1) % n], polygon[i]), sub(p, polygon[i])) < 0.0) return false;
  }
  return true;
}

double distance_to_convex(const Polygon& polygon, Point2 p) {
  if (point_in_convex(polygon, p)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    best = std::min(best, segment_distance(p, polygon[i], polygon[(i + 1) % polygon.size()]));
  }
  return best;
}

ClosureResult check_closure(Point2 center, double theta, double width, std::span<const ConvexObject> objects,
                            const GripperGeometry& gripper, double normal_tolerance) {
  if (!(width > 0.0) || !std::isfinite(width)) throw InvalidArgument("grasp width must be positive and finite");
  if (width > gripper.max_opening) return {false, "exceeds gripper", -1};

  const Point2 u{std::cos(theta), std::sin(theta)};
  const Point2 a{center.x - 0.5 * width * u.x, center.y - 0.5 * width * u.y};
  const Point2 b{center.x + 0.5 * width * u.x, center.y + 0.5 * width * u.y};

  int touched = -1;
  int touched_count = 0;
  std::optional<Hit> first, last;
  for (std::size_t oi = 0; oi < objects.size(); ++oi) {
    bool hit_object = false;
    for (const auto& part : objects[oi].parts) {
      auto hits = segment_hits(part, a, b);
      const bool inside = point_in_convex(part, a) || point_in_convex(part, b) || point_in_convex(part, center);
      if (hits.empty() && !inside) continue;
      hit_object = true;
      for (const auto& h : hits) {
        if (!first || h.t < first->t || (h.t == first->t && h.normal.x * u.x + h.normal.y * u.y <
                                                                first->normal.x * u.x + first->normal.y * u.y)) {
          first = h;
        }
        if (!last || h.t > last->t || (h.t == last->t && h.normal.x * u.x + h.normal.y * u.y >
                                                              last->normal.x * u.x + last->normal.y * u.y)) {
          last = h;
        }
      }
    }
    if (hit_object) {
      ++touched_count;
      touched = static_cast<int>(oi);
    }
  }
  if (touched_count == 0) return {false, "no object between fingers", -1};
  if (touched_count > 1) return {false, "multiple objects between fingers", -1};

  const double clearance = 0.5 * gripper.finger_thickness;
  for (const auto& object : objects) {
    for (const auto& part : object.parts) {
      if (distance_to_convex(part, a) <= clearance || distance_to_convex(part, b) <= clearance) {
        return {false, "non-antipodal contact", touched};
      }
    }
  }
  if (!first || !last) return {false, "non-antipodal contact", touched};
  const double cos_tol = std::cos(normal_tolerance);
  // Finger at a moves along +u and meets a face whose normal points back at it.
  const double opposing_a = -(first->normal.x * u.x + first->normal.y * u.y);
  const double opposing_b = last->normal.x * u.x + last->normal.y * u.y;
  if (opposing_a < cos_tol || opposing_b < cos_tol) return {false, "non-antipodal contact", touched};
  return {true, "", touched};
}

}  // namespace graspforge::geometry
