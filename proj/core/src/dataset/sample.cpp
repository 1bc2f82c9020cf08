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

#include "graspforge/dataset/sample.hpp"

#include "graspforge/errors.hpp"

namespace graspforge::dataset {

std::string to_string(Source source) {
  switch (source) {
    case Source::kCornell: return "cornell";
    case Source::kJacquard: return "jacquard";
    case Source::kSynthetic: return "synthetic";
  }
  return "unknown";
}

Source source_from_string(const std::string& name) {
  if (name == "cornell") return Source::kCornell;
  if (name == "jacquard") return Source::kJacquard;
  if (name == "synthetic") return Source::kSynthetic;
  throw InvalidArgument("unknown dataset source '" + name + "'");
}

std::string to_string(Modality modality) {
  switch (modality) {
    case Modality::kDepth: return "d";
    case Modality::kRgb: return "rgb";
    case Modality::kRgbd: return "rgbd";
  }
  return "unknown";
}

Modality modality_from_string(const std::string& name) {
  if (name == "d" || name == "depth") return Modality::kDepth;
  if (name == "rgb") return Modality::kRgb;
  if (name == "rgbd" || name == "rgb-d") return Modality::kRgbd;
  throw InvalidArgument("unknown modality '" + name + "' (expected d, rgb or rgbd)");
}

int channel_count(Modality modality) {
  switch (modality) {
    case Modality::kDepth: return 1;
    case Modality::kRgb: return 3;
    case Modality::kRgbd: return 4;
  }
  return 0;
}

int Sample::width() const { return rgb ? rgb->width : (depth ? depth->width : 0); }
int Sample::height() const { return rgb ? rgb->height : (depth ? depth->height : 0); }

bool Sample::has(Modality modality) const {
  switch (modality) {
    case Modality::kDepth: return depth.has_value();
    case Modality::kRgb: return rgb.has_value();
    case Modality::kRgbd: return rgb.has_value() && depth.has_value();
  }
  return false;
}

}  // namespace graspforge::dataset
