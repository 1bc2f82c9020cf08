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

#include <span>
#include <vector>

#include "graspforge/geometry/grasp.hpp"
#include "graspforge/image.hpp"

namespace graspforge::geometry {

/// Per-pixel grasp images sharing one shape. `width` is normalized by w_max.
struct GraspMaps {
  ImageF quality;
  ImageF cos2t;
  ImageF sin2t;
  ImageF width;

  int rows() const { return quality.height; }
  int cols() const { return quality.width; }
};

inline constexpr double kDefaultWMax = 150.0;

/// Rasterizes ground-truth rectangles. Each rectangle paints the band that
/// spans its full width and the middle third of its height: quality 1, its
/// angle code, and width / w_max (clamped to [0, 1]). Later rectangles
/// overwrite earlier ones; everything else stays 0.
GraspMaps render_target_maps(std::span<const GraspRectangle> rectangles, int image_width, int image_height,
                             double w_max = kDefaultWMax);

/// Whether pixel (x, y) lies in the quality band of `rect`.
bool in_quality_band(const GraspRectangle& rect, double x, double y);

struct PeakOptions {
  double sigma = 2.0;
  double threshold = 0.2;
  double min_distance = 2.0;
};

/// Separable Gaussian blur with reflected borders and a 4-sigma radius.
ImageF gaussian_blur(const ImageF& image, double sigma);

/// Local maxima of the smoothed quality map, strongest first. A flat-topped
/// maximum contributes its most central pixel. Peaks at or below the threshold
/// are ignored, and accepted peaks are at least min_distance apart.
std::vector<PixelGrasp> extract_grasps(const GraspMaps& maps, int max_grasps, double w_max = kDefaultWMax,
                                       const PeakOptions& options = {});

}  // namespace graspforge::geometry
