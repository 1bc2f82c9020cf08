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

#include "graspforge/dataset/loaders.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <regex>
#include <sstream>

#include <spdlog/spdlog.h>

#include "graspforge/errors.hpp"
#include "graspforge/io/image_io.hpp"

namespace graspforge::dataset {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream in(line);
  if (sep == ' ') {
    while (in >> token) out.push_back(token);
  } else {
    while (std::getline(in, token, sep)) out.push_back(token);
  }
  return out;
}

bool parse_double(const std::string& token, double& value) {
  const char* begin = token.c_str();
  char* end = nullptr;
  value = std::strtod(begin, &end);
  while (end && *end && std::isspace(static_cast<unsigned char>(*end))) ++end;
  return end != begin && end && *end == '\0';
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

std::ifstream open_or_throw(const fs::path& path, const std::string& sample_id) {
  std::ifstream in(path);
  if (!in) throw DataError("sample " + sample_id + ": missing file " + path.string());
  return in;
}

std::map<std::string, std::string> read_object_ids(const fs::path& root) {
  std::map<std::string, std::string> ids;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    const auto name = entry.path().filename().string();
    if (!entry.is_regular_file() || (name != "z.txt" && name != "object_ids.txt")) continue;
    std::ifstream in(entry.path());
    std::string line;
    while (std::getline(in, line)) {
      const auto fields = split(line, ' ');
      if (fields.size() < 2) continue;
      double number = 0;
      if (!parse_double(fields[0], number)) continue;
      char key[16];
      std::snprintf(key, sizeof key, "%04d", static_cast<int>(number));
      ids[key] = fields[1];
    }
  }
  return ids;
}

}  // namespace

std::vector<geometry::GraspRectangle> parse_cornell_rectangles(std::istream& in, const std::string& source_name,
                                                               int* dropped) {
  std::vector<geometry::GraspRectangle> out;
  std::array<geometry::Point2, 4> corners{};
  int filled = 0;
  int line_no = 0;
  int nan_count = 0;
  bool has_nan = false;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto fields = split(line, ' ');
    double x = 0, y = 0;
    if (fields.size() != 2 || !parse_double(fields[0], x) || !parse_double(fields[1], y)) {
      throw DataError(source_name + ":" + std::to_string(line_no) + ": malformed rectangle vertex '" + line + "'");
    }
    has_nan = has_nan || std::isnan(x) || std::isnan(y);
    corners[filled++] = {x, y};
    if (filled == 4) {
      auto rect = geometry::GraspRectangle::from_corners(corners);
      if (has_nan || !(rect.width > 0.0) || !(rect.height > 0.0)) {
        ++nan_count;
      } else {
        out.push_back(rect);
      }
      filled = 0;
      has_nan = false;
    }
  }
  if (filled != 0) {
    throw DataError(source_name + ":" + std::to_string(line_no) + ": incomplete rectangle (" +
                    std::to_string(filled) + " of 4 vertices)");
  }
  if (nan_count > 0) spdlog::warn("{}: dropped {} rectangle(s) with NaN vertices", source_name, nan_count);
  if (dropped) *dropped = nan_count;
  return out;
}

std::vector<geometry::GraspRectangle> parse_jacquard_grasps(std::istream& in, const std::string& source_name) {
  std::vector<geometry::GraspRectangle> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto fields = split(line, ';');
    std::array<double, 5> v{};
    bool ok = fields.size() == 5;
    for (std::size_t i = 0; ok && i < 5; ++i) ok = parse_double(fields[i], v[i]);
    if (!ok) {
      throw DataError(source_name + ":" + std::to_string(line_no) + ": malformed grasp record '" + line + "'");
    }
    if (std::any_of(v.begin(), v.end(), [](double d) { return std::isnan(d); })) {
      spdlog::warn("{}:{}: dropped grasp with NaN field", source_name, line_no);
      continue;
    }
    geometry::GraspRectangle rect{{v[0], v[1]}, geometry::normalize_angle(v[2] * std::numbers::pi / 180.0), v[3], v[4]};
    if (!(rect.width > 0.0) || !(rect.height > 0.0)) {
      throw DataError(source_name + ":" + std::to_string(line_no) + ": non-positive grasp size");
    }
    out.push_back(rect);
  }
  return out;
}

ImageF depth_from_pcd(std::istream& in, int width, int height, const std::string& source_name) {
  ImageF depth(width, height, 1, 0.0f);
  std::string line;
  int z_col = 2, index_col = 4;
  bool in_data = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line) || line[0] == '#') continue;
    const auto fields = split(line, ' ');
    if (!in_data) {
      if (fields[0] == "FIELDS") {
        for (std::size_t i = 1; i < fields.size(); ++i) {
          if (fields[i] == "z") z_col = static_cast<int>(i) - 1;
          if (fields[i] == "index") index_col = static_cast<int>(i) - 1;
        }
      } else if (fields[0] == "DATA") {
        if (fields.size() < 2 || fields[1] != "ascii") throw DataError(source_name + ": only ASCII PCD is supported");
        in_data = true;
      }
      continue;
    }
    double z = 0, index = 0;
    if (static_cast<int>(fields.size()) <= std::max(z_col, index_col) || !parse_double(fields[z_col], z) ||
        !parse_double(fields[index_col], index)) {
      throw DataError(source_name + ":" + std::to_string(line_no) + ": malformed point");
    }
    const auto i = static_cast<long>(index);
    if (i < 0 || i >= static_cast<long>(width) * height) continue;
    depth.pixels[static_cast<std::size_t>(i)] = static_cast<float>(z / 1000.0);
  }
  if (!in_data) throw DataError(source_name + ": PCD header has no DATA line");
  return depth;
}

std::vector<Sample> load_cornell(const fs::path& root) {
  if (!fs::is_directory(root)) throw DataError("Cornell root " + root.string() + " is not a directory");
  const std::regex pos_name(R"(pcd(\d{4})cpos\.txt)");
  std::vector<fs::path> pos_files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file() && std::regex_match(entry.path().filename().string(), pos_name)) {
      pos_files.push_back(entry.path());
    }
  }
  if (pos_files.empty()) throw DataError("no Cornell samples (pcdNNNNcpos.txt) found under " + root.string());
  std::sort(pos_files.begin(), pos_files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

  const auto object_ids = read_object_ids(root);
  if (object_ids.empty()) spdlog::info("no Cornell object id file found; each image is its own object");

  std::vector<Sample> samples;
  samples.reserve(pos_files.size());
  for (const auto& pos : pos_files) {
    const std::string number = pos.filename().string().substr(3, 4);
    const std::string id = "pcd" + number;
    const fs::path dir = pos.parent_path();
    Sample s;
    s.id = id;
    s.source = Source::kCornell;
    const auto it = object_ids.find(number);
    s.object_id = it != object_ids.end() ? it->second : id;

    const fs::path rgb_path = dir / (id + "r.png");
    if (!fs::exists(rgb_path)) throw DataError("sample " + id + ": missing file " + rgb_path.string());
    s.rgb = io::read_png_rgb(rgb_path);

    const fs::path tiff_path = dir / (id + "d.tiff");
    const fs::path pcd_path = dir / (id + ".txt");
    if (fs::exists(tiff_path)) {
      s.depth = io::read_tiff_depth(tiff_path);
    } else if (fs::exists(pcd_path)) {
      auto in = open_or_throw(pcd_path, id);
      s.depth = depth_from_pcd(in, s.rgb->width, s.rgb->height, pcd_path.string());
    } else {
      throw DataError("sample " + id + ": missing depth (" + tiff_path.string() + " or " + pcd_path.string() + ")");
    }

    auto pos_in = open_or_throw(pos, id);
    s.rectangles = parse_cornell_rectangles(pos_in, pos.string());
    const fs::path neg = dir / (id + "cneg.txt");
    if (fs::exists(neg)) {
      std::ifstream neg_in(neg);
      s.negative_count = static_cast<int>(parse_cornell_rectangles(neg_in, neg.string()).size());
    }
    samples.push_back(std::move(s));
  }
  return samples;
}

std::vector<Sample> load_jacquard(const fs::path& root) {
  if (!fs::is_directory(root)) throw DataError("Jacquard root " + root.string() + " is not a directory");
  const std::string suffix = "_grasps.txt";
  std::vector<fs::path> grasp_files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    const auto name = entry.path().filename().string();
    if (entry.is_regular_file() && name.size() > suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      grasp_files.push_back(entry.path());
    }
  }
  if (grasp_files.empty()) throw DataError("no Jacquard scenes (*_grasps.txt) found under " + root.string());
  std::sort(grasp_files.begin(), grasp_files.end());

  std::vector<Sample> samples;
  samples.reserve(grasp_files.size());
  for (const auto& grasp_path : grasp_files) {
    const std::string name = grasp_path.filename().string();
    const std::string prefix = name.substr(0, name.size() - suffix.size());
    const fs::path dir = grasp_path.parent_path();
    Sample s;
    s.id = prefix;
    s.source = Source::kJacquard;
    s.object_id = dir.filename().string();

    const fs::path rgb_path = dir / (prefix + "_RGB.png");
    if (!fs::exists(rgb_path)) throw DataError("sample " + prefix + ": missing file " + rgb_path.string());
    s.rgb = io::read_png_rgb(rgb_path);
    fs::path depth_path = dir / (prefix + "_perfect_depth.tiff");
    if (!fs::exists(depth_path)) depth_path = dir / (prefix + "_stereo_depth.tiff");
    if (!fs::exists(depth_path)) throw DataError("sample " + prefix + ": missing depth file in " + dir.string());
    s.depth = io::read_tiff_depth(depth_path);

    auto in = open_or_throw(grasp_path, prefix);
    s.rectangles = parse_jacquard_grasps(in, grasp_path.string());
    samples.push_back(std::move(s));
  }
  return samples;
}

}  // namespace graspforge::dataset
