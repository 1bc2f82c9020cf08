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

#include <random>

#include "graspforge/dataset/sample.hpp"

namespace graspforge::dataset {

/// Similarity transform about the image center c:
/// p' = R(rotation) * zoom * (p - c) + c + crop_offset.
struct AugmentSpec {
  double rotation = 0.0;  // radians, [-pi/2, pi/2]
  double zoom = 1.0;      // [0.5, 1]
  geometry::Point2 crop_offset;

  void validate() const;
  geometry::Point2 apply(geometry::Point2 p, int width, int height) const;
  geometry::Point2 invert(geometry::Point2 p, int width, int height) const;
  geometry::GraspRectangle apply(const geometry::GraspRectangle& r, int width, int height) const;
};

struct AugmentRanges {
  double max_rotation = 1.5707963267948966;
  double min_zoom = 0.5;
  double max_zoom = 1.0;
  double max_offset_fraction = 0.1;  // of the image side
};

inline constexpr int kAugmentationsPerCornellImage = 50;

AugmentSpec random_augment_spec(std::mt19937_64& rng, int image_size, const AugmentRanges& ranges = {});

/// Warps images and rectangles with the same map. Colour outside the source
/// replicates the border; depth outside the source is inpainted. Rectangles
/// leaving the frame are dropped (warning when none remain).
Sample augment(const Sample& sample, const AugmentSpec& spec);

}  // namespace graspforge::dataset
