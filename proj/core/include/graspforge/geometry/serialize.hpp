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

#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "graspforge/geometry/grasp.hpp"
#include "graspforge/geometry/transforms.hpp"

namespace graspforge::geometry {

/// {x, y, theta_rad, width_px, quality}
nlohmann::json to_json(const PixelGrasp& grasp);
/// Pixel fields plus {X, Y, Z, theta_r_rad, width_m}.
nlohmann::json to_json(const PixelGrasp& grasp, const RobotGrasp& robot);
PixelGrasp pixel_grasp_from_json(const nlohmann::json& j);

/// One JSON object per line, no trailing comma, newline-terminated.
void write_grasp_lines(std::ostream& out, std::span<const PixelGrasp> grasps);
void write_grasp_lines(std::ostream& out, std::span<const PixelGrasp> grasps, std::span<const RobotGrasp> robot);
std::vector<PixelGrasp> read_grasp_lines(std::istream& in);

}  // namespace graspforge::geometry
