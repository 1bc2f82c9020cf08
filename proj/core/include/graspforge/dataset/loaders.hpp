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

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "graspforge/dataset/sample.hpp"

namespace graspforge::dataset {

/// Loads the Cornell grasp dataset.
///
/// Every `pcdNNNNcpos.txt` found below `root` defines one sample with
/// `pcdNNNNr.png` (RGB) and either `pcdNNNNd.tiff` (depth in meters) or the
/// ASCII point cloud `pcdNNNN.txt` (z in millimeters). Rectangle files hold
/// four "x y" vertex lines per rectangle. Object ids come from an optional
/// `z.txt` / `object_ids.txt` file of "<image number> <object id>" lines;
/// without one every image is its own object.
std::vector<Sample> load_cornell(const std::filesystem::path& root);

/// Loads the Jacquard dataset: every `<scene>_grasps.txt` below `root` pairs
/// with `<scene>_RGB.png` and `<scene>_perfect_depth.tiff` (or
/// `_stereo_depth.tiff`). Grasp lines are "x;y;angle_deg;opening;jaw_size".
/// The object id is the scene's parent directory name.
std::vector<Sample> load_jacquard(const std::filesystem::path& root);

/// Parses Cornell rectangle lines (4 vertices per rectangle). Rectangles with
/// NaN vertices are dropped and counted in `dropped`.
std::vector<geometry::GraspRectangle> parse_cornell_rectangles(std::istream& in, const std::string& source_name,
                                                               int* dropped = nullptr);

std::vector<geometry::GraspRectangle> parse_jacquard_grasps(std::istream& in, const std::string& source_name);

/// Depth image from an ASCII PCD file: the point index gives the pixel, z/1000 the depth.
ImageF depth_from_pcd(std::istream& in, int width, int height, const std::string& source_name);

}  // namespace graspforge::dataset
