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

#include "graspforge/dataset/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "graspforge/dataset/preprocess.hpp"
#include "graspforge/errors.hpp"
#include "graspforge/util/random.hpp"

namespace graspforge::dataset {

using geometry::GraspRectangle;
using geometry::Point2;
using geometry::Polygon;

std::string to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::kBar: return "bar";
    case ShapeKind::kTShape: return "t-shape";
    case ShapeKind::kFlatDisk: return "flat-disk";
  }
  return "unknown";
}

ShapeKind shape_kind_from_string(const std::string& name) {
  for (auto kind : {ShapeKind::kBar, ShapeKind::kTShape, ShapeKind::kFlatDisk}) {
    if (to_string(kind) == name) return kind;
  }
  throw InvalidArgument("unknown shape kind '" + name + "' (expected bar, t-shape or flat-disk)");
}

geometry::CameraIntrinsics SynthSettings::intrinsics() const {
  const double f = 0.9 * image_size;
  const double c = (image_size - 1) / 2.0;
  return {f, f, c, c, 1.0};
}

geometry::HandEyeTransform synth_hand_eye() {
  geometry::HandEyeTransform t;
  t.rotation << 0, -1, 0, -1, 0, 0, 0, 0, -1;
  t.translation = {0.5, 0.0, 0.6};
  return t;
}

namespace {

Polygon rect_polygon(Point2 center, double angle, double length, double thickness) {
  const auto c = GraspRectangle{center, angle, length, thickness}.corners();
  return {c.begin(), c.end()};
}

// Grasps across a straight section: positions along `axis_angle` from
// `center` in [-half_span, half_span], spaced about 2 units, each closing
// perpendicular to the axis over `cross_section` plus the margin.
void add_section_grasps(std::vector<GraspRectangle>& out, Point2 center, double axis_angle, double half_span,
                        double cross_section, double margin) {
  if (half_span < 0.0) return;
  const double unit = margin / 6.0;
  const int steps = static_cast<int>(std::floor(2.0 * half_span / (2.0 * unit)));
  const double width = cross_section + margin;
  const double theta = geometry::normalize_angle(axis_angle + std::numbers::pi / 2.0);
  const double ax = std::cos(axis_angle), ay = std::sin(axis_angle);
  for (int i = 0; i <= steps; ++i) {
    const double t = steps == 0 ? 0.0 : -half_span + 2.0 * half_span * i / steps;
    out.push_back({{center.x + t * ax, center.y + t * ay}, theta, width, 0.5 * width});
  }
}

double bounding_radius(const SynthObject& o) {
  double r = 0.0;
  for (const auto& part : o.shape.parts) {
    for (const auto& p : part) r = std::max(r, std::hypot(p.x - o.center.x, p.y - o.center.y));
  }
  return r;
}

}  // namespace

SynthObject make_bar(Point2 center, double axis_angle, double length, double thickness, double margin) {
  if (!(length > 0 && thickness > 0)) throw InvalidArgument("bar dimensions must be positive");
  SynthObject o;
  o.kind = ShapeKind::kBar;
  o.center = center;
  o.shape.parts.push_back(rect_polygon(center, axis_angle, length, thickness));
  add_section_grasps(o.candidates, center, axis_angle, length / 2.0 - margin / 2.0, thickness, margin);
  o.radius = bounding_radius(o);
  return o;
}

SynthObject make_t_shape(Point2 center, double axis_angle, double bar_length, double bar_thickness,
                         double stem_length, double stem_thickness, double margin) {
  if (!(bar_length > 0 && bar_thickness > 0 && stem_length > 0 && stem_thickness > 0)) {
    throw InvalidArgument("T-shape dimensions must be positive");
  }
  SynthObject o;
  o.kind = ShapeKind::kTShape;
  o.center = center;
  const double px = -std::sin(axis_angle), py = std::cos(axis_angle);
  const Point2 bar_center{center.x - px * stem_length / 2.0, center.y - py * stem_length / 2.0};
  const double stem_offset = (bar_thickness + stem_length) / 2.0;
  const Point2 stem_center{bar_center.x + px * stem_offset, bar_center.y + py * stem_offset};
  const double stem_angle = axis_angle + std::numbers::pi / 2.0;
  o.shape.parts.push_back(rect_polygon(bar_center, axis_angle, bar_length, bar_thickness));
  o.shape.parts.push_back(rect_polygon(stem_center, stem_angle, stem_length, stem_thickness));
  add_section_grasps(o.candidates, bar_center, axis_angle, bar_length / 2.0 - margin / 2.0, bar_thickness, margin);
  add_section_grasps(o.candidates, stem_center, stem_angle, stem_length / 2.0 - margin / 2.0, stem_thickness,
                     margin);
  o.radius = bounding_radius(o);
  return o;
}

SynthObject make_flat_disk(Point2 center, double flat_normal_angle, double radius, double half_gap, double margin) {
  if (!(radius > 0 && half_gap > 0 && half_gap < radius)) {
    throw InvalidArgument("disk needs 0 < half_gap < radius");
  }
  SynthObject o;
  o.kind = ShapeKind::kFlatDisk;
  o.center = center;
  constexpr int kSides = 48;
  Polygon circle;
  for (int i = 0; i < kSides; ++i) {
    const double a = 2.0 * std::numbers::pi * i / kSides;
    circle.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
  }
  const auto slab = GraspRectangle{center, flat_normal_angle, 2.0 * half_gap, 4.0 * radius}.corners();
  o.shape.parts.push_back(geometry::clip_convex(circle, slab));
  const double flat_half = std::sqrt(radius * radius - half_gap * half_gap);
  add_section_grasps(o.candidates, center, flat_normal_angle + std::numbers::pi / 2.0, flat_half - margin / 2.0,
                     2.0 * half_gap, margin);
  o.radius = bounding_radius(o);
  return o;
}

std::vector<GraspRectangle> analytic_grasps(const std::vector<SynthObject>& objects, const SynthSettings& settings) {
  std::vector<geometry::ConvexObject> shapes;
  for (const auto& o : objects) shapes.push_back(o.shape);
  const auto gripper = settings.gripper();
  std::vector<GraspRectangle> out;
  for (const auto& o : objects) {
    for (const auto& g : o.candidates) {
      if (!rectangle_in_bounds(g, settings.image_size, settings.image_size)) continue;
      if (geometry::check_closure(g.center, g.theta, g.width, shapes, gripper).success) out.push_back(g);
    }
  }
  return out;
}

SynthScene render_scene(std::vector<SynthObject> objects, const SynthSettings& settings, std::uint64_t noise_seed,
                        std::array<std::uint8_t, 3> background, const std::string& id) {
  const int s = settings.image_size;
  if (s < 16) throw InvalidArgument("synthetic image size must be at least 16");
  SynthScene scene;
  scene.settings = settings;
  scene.noise_seed = noise_seed;
  scene.background = background;

  ImageU8 rgb(s, s, 3);
  ImageF depth(s, s, 1);
  std::mt19937_64 rng(noise_seed);
  std::normal_distribution<double> rgb_noise(0.0, settings.rgb_noise);
  std::normal_distribution<double> depth_noise(0.0, settings.depth_noise_m);
  for (int y = 0; y < s; ++y) {
    for (int x = 0; x < s; ++x) {
      const Point2 p{static_cast<double>(x), static_cast<double>(y)};
      const SynthObject* hit = nullptr;
      for (const auto& o : objects) {
        for (const auto& part : o.shape.parts) {
          if (geometry::point_in_convex(part, p)) hit = &o;
        }
      }
      const auto& color = hit ? hit->color : background;
      for (int c = 0; c < 3; ++c) {
        rgb.at(x, y, c) = static_cast<std::uint8_t>(std::clamp(std::lround(color[c] + rgb_noise(rng)), 0L, 255L));
      }
      const double z = settings.table_depth_m - (hit ? hit->height_m : 0.0);
      depth.at(x, y) = static_cast<float>(z + depth_noise(rng));
    }
  }
  scene.sample.id = id;
  scene.sample.object_id = id;
  scene.sample.source = Source::kSynthetic;
  scene.sample.rgb = std::move(rgb);
  scene.sample.depth = std::move(depth);
  scene.sample.rectangles = analytic_grasps(objects, settings);
  scene.objects = std::move(objects);
  return scene;
}

SynthScene generate_scene(std::uint64_t seed, int num_objects, const SynthSettings& settings) {
  if (num_objects < 0 || num_objects > 5) throw InvalidArgument("num_objects must lie in [0, 5]");
  if (settings.kinds.empty()) throw InvalidArgument("synthetic settings list no shape kinds");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  auto range = [&](double lo, double hi) { return lo + (hi - lo) * uni(rng); };
  const double u = settings.unit();
  const double s = settings.image_size;

  std::array<std::uint8_t, 3> background{};
  const double tone = range(140, 200);
  background = {static_cast<std::uint8_t>(tone), static_cast<std::uint8_t>(tone - range(0, 15)),
                static_cast<std::uint8_t>(tone - range(10, 35))};

  std::vector<SynthObject> objects;
  double scale = 1.0;
  for (int attempt = 0; attempt < 40 && static_cast<int>(objects.size()) < num_objects; ++attempt) {
    objects.clear();
    bool failed = false;
    for (int i = 0; i < num_objects && !failed; ++i) {
      const double pick = uni(rng) * static_cast<double>(settings.kinds.size());
      const ShapeKind kind = settings.kinds[std::min(settings.kinds.size() - 1, static_cast<std::size_t>(pick))];
      const double angle = range(-std::numbers::pi, std::numbers::pi);
      const double k = scale * u;
      const double margin = 6.0 * k;
      SynthObject proto;
      if (kind == ShapeKind::kBar) {
        proto = make_bar({0, 0}, angle, range(26, 36) * k, range(6, 10) * k, margin);
      } else if (kind == ShapeKind::kTShape) {
        proto = make_t_shape({0, 0}, angle, range(26, 34) * k, range(6, 9) * k, range(16, 22) * k, range(6, 9) * k,
                             margin);
      } else {
        const double radius = range(10, 12);
        proto = make_flat_disk({0, 0}, angle, radius * k, radius * range(0.6, 0.7) * k, margin);
      }
      const double border = proto.radius + 5.0 * k;
      bool placed = false;
      for (int tries = 0; tries < 200 && !placed && border < s / 2.0; ++tries) {
        const Point2 c{range(border, s - 1.0 - border), range(border, s - 1.0 - border)};
        const bool clear = std::all_of(objects.begin(), objects.end(), [&](const SynthObject& o) {
          return std::hypot(o.center.x - c.x, o.center.y - c.y) >= o.radius + proto.radius + 4.0 * k;
        });
        if (!clear) continue;
        placed = true;
        SynthObject moved = proto;
        moved.center = c;
        for (auto& part : moved.shape.parts) {
          for (auto& p : part) p = {p.x + c.x, p.y + c.y};
        }
        for (auto& g : moved.candidates) g.center = {g.center.x + c.x, g.center.y + c.y};
        moved.height_m = range(0.02, 0.05);
        const double hue = range(0.0, 6.0);
        const int sector = static_cast<int>(hue) % 6;
        const double f = hue - std::floor(hue);
        const double hi = range(170, 240), lo = range(20, 70);
        const double mid = lo + (hi - lo) * (sector % 2 ? 1.0 - f : f);
        static constexpr int kOrder[6][3] = {{0, 1, 2}, {1, 0, 2}, {2, 0, 1}, {2, 1, 0}, {1, 2, 0}, {0, 2, 1}};
        const double levels[3] = {hi, mid, lo};
        for (int ch = 0; ch < 3; ++ch) moved.color[ch] = static_cast<std::uint8_t>(levels[kOrder[sector][ch]]);
        objects.push_back(std::move(moved));
      }
      failed = !placed;
    }
    if (failed) scale *= 0.9;
  }
  if (static_cast<int>(objects.size()) < num_objects) {
    throw InvalidArgument("could not place " + std::to_string(num_objects) + " objects in a " +
                          std::to_string(settings.image_size) + " px scene");
  }
  char id[48];
  std::snprintf(id, sizeof id, "synth_%016llx", static_cast<unsigned long long>(seed));
  return render_scene(std::move(objects), settings, util::mix_seed(seed, 1), background, id);
}

SynthScene remove_object(const SynthScene& scene, std::size_t index) {
  if (index >= scene.objects.size()) throw InvalidArgument("object index out of range");
  auto objects = scene.objects;
  objects.erase(objects.begin() + static_cast<std::ptrdiff_t>(index));
  return render_scene(std::move(objects), scene.settings, scene.noise_seed, scene.background, scene.sample.id);
}

Sample synth_scene(std::uint64_t seed, int image_size, int num_objects) {
  SynthSettings settings;
  settings.image_size = image_size;
  return generate_scene(seed, num_objects, settings).sample;
}

std::vector<SynthScene> synth_dataset(std::size_t count, std::uint64_t seed, const SynthSettings& settings,
                                      int min_objects, int max_objects) {
  if (min_objects < 1 || max_objects < min_objects || max_objects > 5) {
    throw InvalidArgument("object count range must satisfy 1 <= min <= max <= 5");
  }
  std::vector<SynthScene> scenes;
  scenes.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t scene_seed = util::mix_seed(seed, i);
    const int n = min_objects + static_cast<int>(scene_seed % static_cast<std::uint64_t>(max_objects - min_objects + 1));
    auto scene = generate_scene(scene_seed, n, settings);
    char id[48];
    std::snprintf(id, sizeof id, "synth_%llu_%05zu", static_cast<unsigned long long>(seed), i);
    scene.sample.id = id;
    scene.sample.object_id = id;
    scenes.push_back(std::move(scene));
  }
  return scenes;
}

}  // namespace graspforge::dataset
