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

#include <optional>
#include <string>
#include <vector>

#include "graspforge/geometry/grasp.hpp"
#include "graspforge/image.hpp"

namespace graspforge::dataset {

enum class Source { kCornell, kJacquard, kSynthetic };

/// Input modality; the channel count is 1, 3 and 4 respectively.
enum class Modality { kDepth, kRgb, kRgbd };

std::string to_string(Source source);
Source source_from_string(const std::string& name);
std::string to_string(Modality modality);
Modality modality_from_string(const std::string& name);
int channel_count(Modality modality);

/// One dataset element. Depth is in meters; 0 and NaN mark holes.
struct Sample {
  std::string id;
  std::string object_id;
  Source source = Source::kSynthetic;
  std::optional<ImageU8> rgb;
  std::optional<ImageF> depth;
  // Positive grasps only.
  std::vector<geometry::GraspRectangle> rectangles;
  int negative_count = 0;

  int width() const;
  int height() const;
  bool has(Modality modality) const;
};

}  // namespace graspforge::dataset
