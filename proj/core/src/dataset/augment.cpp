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

#include "graspforge/dataset/augment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <spdlog/spdlog.h>

#include "graspforge/dataset/preprocess.hpp"
#include "graspforge/errors.hpp"

namespace graspforge::dataset {

void AugmentSpec::validate() const {
  constexpr double half_pi = std::numbers::pi / 2.0;
  if (!(rotation >= -half_pi - 1e-12 && rotation <= half_pi + 1e-12)) {
    throw InvalidArgument("augmentation rotation must lie in [-pi/2, pi/2]");
  }
  if (!(zoom >= 0.5 && zoom <= 1.0)) throw InvalidArgument("augmentation zoom must lie in [0.5, 1]");
  if (!std::isfinite(crop_offset.x) || !std::isfinite(crop_offset.y)) {
    throw InvalidArgument("augmentation offset must be finite");
  }
}

geometry::Point2 AugmentSpec::apply(geometry::Point2 p, int width, int height) const {
  const double cx = (width - 1) / 2.0, cy = (height - 1) / 2.0;
  const double c = std::cos(rotation), s = std::sin(rotation);
  const double dx = zoom * (p.x - cx), dy = zoom * (p.y - cy);
  return {c * dx - s * dy + cx + crop_offset.x, s * dx + c * dy + cy + crop_offset.y};
}

geometry::Point2 AugmentSpec::invert(geometry::Point2 p, int width, int height) const {
  const double cx = (width - 1) / 2.0, cy = (height - 1) / 2.0;
  const double c = std::cos(rotation), s = std::sin(rotation);
  const double dx = p.x - cx - crop_offset.x, dy = p.y - cy - crop_offset.y;
  return {(c * dx + s * dy) / zoom + cx, (-s * dx + c * dy) / zoom + cy};
}

geometry::GraspRectangle AugmentSpec::apply(const geometry::GraspRectangle& r, int width, int height) const {
  return {apply(r.center, width, height), geometry::normalize_angle(r.theta + rotation), r.width * zoom,
          r.height * zoom};
}

AugmentSpec random_augment_spec(std::mt19937_64& rng, int image_size, const AugmentRanges& ranges) {
  std::uniform_real_distribution<double> rot(-ranges.max_rotation, ranges.max_rotation);
  std::uniform_real_distribution<double> zoom(ranges.min_zoom, ranges.max_zoom);
  const double m = ranges.max_offset_fraction * image_size;
  std::uniform_real_distribution<double> off(-m, m);
  AugmentSpec spec;
  spec.rotation = rot(rng);
  spec.zoom = zoom(rng);
  spec.crop_offset.x = off(rng);
  spec.crop_offset.y = off(rng);
  return spec;
}

namespace {

// Bilinear sample at a continuous source position; false when outside.
template <typename T>
bool sample_at(const Image<T>& img, double x, double y, int c, double& value) {
  if (x < -0.5 || y < -0.5 || x > img.width - 0.5 || y > img.height - 0.5) return false;
  x = std::clamp(x, 0.0, img.width - 1.0);
  y = std::clamp(y, 0.0, img.height - 1.0);
  const int x0 = static_cast<int>(std::floor(x)), y0 = static_cast<int>(std::floor(y));
  const int x1 = std::min(x0 + 1, img.width - 1), y1 = std::min(y0 + 1, img.height - 1);
  const double fx = x - x0, fy = y - y0;
  const double top = (1 - fx) * img.at(x0, y0, c) + fx * img.at(x1, y0, c);
  const double bottom = (1 - fx) * img.at(x0, y1, c) + fx * img.at(x1, y1, c);
  value = (1 - fy) * top + fy * bottom;
  return true;
}

}  // namespace

Sample augment(const Sample& sample, const AugmentSpec& spec) {
  spec.validate();
  const int w = sample.width(), h = sample.height();
  Sample out = sample;
  if (spec.rotation == 0.0 && spec.zoom == 1.0 && spec.crop_offset.x == 0.0 && spec.crop_offset.y == 0.0) {
    return out;
  }
  if (sample.rgb) {
    const auto& src = *sample.rgb;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        auto p = spec.invert({static_cast<double>(x), static_cast<double>(y)}, w, h);
        p.x = std::clamp(p.x, 0.0, w - 1.0);
        p.y = std::clamp(p.y, 0.0, h - 1.0);
        for (int c = 0; c < src.channels; ++c) {
          double v = 0.0;
          sample_at(src, p.x, p.y, c, v);
          out.rgb->at(x, y, c) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
        }
      }
    }
  }
  if (sample.depth) {
    const ImageF src = inpaint_depth(*sample.depth);
    ImageF warped(w, h, 1, 0.0f);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const auto p = spec.invert({static_cast<double>(x), static_cast<double>(y)}, w, h);
        double v = 0.0;
        warped.at(x, y) = sample_at(src, p.x, p.y, 0, v) ? static_cast<float>(v) : 0.0f;
      }
    }
    out.depth = inpaint_depth(warped);
  }
  out.rectangles.clear();
  for (const auto& r : sample.rectangles) {
    const auto mapped = spec.apply(r, w, h);
    if (rectangle_in_bounds(mapped, w, h)) out.rectangles.push_back(mapped);
  }
  if (out.rectangles.empty() && !sample.rectangles.empty()) {
    spdlog::warn("augmentation of sample {} dropped every rectangle", sample.id);
  }
  return out;
}

}  // namespace graspforge::dataset
