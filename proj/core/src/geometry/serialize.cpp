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

#include "graspforge/geometry/serialize.hpp"

#include <string>

#include "graspforge/errors.hpp"

namespace graspforge::geometry {

nlohmann::json to_json(const PixelGrasp& g) {
  return {{"x", g.x}, {"y", g.y}, {"theta_rad", g.theta}, {"width_px", g.width}, {"quality", g.quality}};
}

nlohmann::json to_json(const PixelGrasp& g, const RobotGrasp& r) {
  nlohmann::json j = to_json(g);
  j["X"] = r.position.x();
  j["Y"] = r.position.y();
  j["Z"] = r.position.z();
  j["theta_r_rad"] = r.theta;
  j["width_m"] = r.width;
  return j;
}

PixelGrasp pixel_grasp_from_json(const nlohmann::json& j) {
  return {j.at("x").get<double>(), j.at("y").get<double>(), j.at("theta_rad").get<double>(),
          j.at("width_px").get<double>(), j.at("quality").get<double>()};
}

void write_grasp_lines(std::ostream& out, std::span<const PixelGrasp> grasps) {
  for (const auto& g : grasps) out << to_json(g).dump() << '\n';
}

void write_grasp_lines(std::ostream& out, std::span<const PixelGrasp> grasps, std::span<const RobotGrasp> robot) {
  if (grasps.size() != robot.size()) throw InvalidArgument("pixel and robot grasp lists differ in length");
  for (std::size_t i = 0; i < grasps.size(); ++i) out << to_json(grasps[i], robot[i]).dump() << '\n';
}

std::vector<PixelGrasp> read_grasp_lines(std::istream& in) {
  std::vector<PixelGrasp> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(pixel_grasp_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw DataError("grasp line " + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace graspforge::geometry
