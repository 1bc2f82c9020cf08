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

#include "graspforge/dataset/annotations.hpp"

#include <fstream>

#include "graspforge/errors.hpp"
#include "graspforge/io/image_io.hpp"

namespace graspforge::dataset {

nlohmann::json annotation_record(const Sample& sample) {
  nlohmann::json rects = nlohmann::json::array();
  for (const auto& r : sample.rectangles) {
    rects.push_back({{"cx", r.center.x}, {"cy", r.center.y}, {"theta", r.theta}, {"width", r.width},
                     {"height", r.height}});
  }
  return {{"id", sample.id},
          {"source", to_string(sample.source)},
          {"object_id", sample.object_id},
          {"rectangles", rects}};
}

void apply_annotation(const nlohmann::json& record, Sample& sample) {
  sample.id = record.at("id").get<std::string>();
  sample.source = source_from_string(record.value("source", std::string("synthetic")));
  sample.object_id = record.value("object_id", sample.id);
  sample.rectangles.clear();
  for (const auto& r : record.at("rectangles")) {
    geometry::GraspRectangle rect{{r.at("cx").get<double>(), r.at("cy").get<double>()},
                                  r.at("theta").get<double>(), r.at("width").get<double>(),
                                  r.at("height").get<double>()};
    rect.validate();
    sample.rectangles.push_back(rect);
  }
}

void write_annotations(std::ostream& out, const std::vector<Sample>& samples) {
  for (const auto& s : samples) out << annotation_record(s).dump() << '\n';
}

std::vector<Sample> read_annotations(std::istream& in, const std::string& source_name) {
  std::vector<Sample> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      Sample s;
      apply_annotation(nlohmann::json::parse(line), s);
      out.push_back(std::move(s));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(source_name + ":" + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw DataError(source_name + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void save_sample_directory(const std::filesystem::path& dir, const std::vector<Sample>& samples) {
  std::filesystem::create_directories(dir);
  for (const auto& s : samples) {
    if (s.rgb) io::write_png(dir / (s.id + "_rgb.png"), *s.rgb);
    if (s.depth) io::write_tiff_depth(dir / (s.id + "_depth.tiff"), *s.depth);
  }
  std::ofstream out(dir / "annotations.jsonl");
  if (!out) throw DataError("cannot write " + (dir / "annotations.jsonl").string());
  write_annotations(out, samples);
}

std::vector<Sample> load_sample_directory(const std::filesystem::path& dir) {
  const auto index = dir / "annotations.jsonl";
  std::ifstream in(index);
  if (!in) throw DataError("missing file " + index.string());
  auto samples = read_annotations(in, index.string());
  if (samples.empty()) throw DataError(index.string() + " lists no samples");
  for (auto& s : samples) {
    const auto rgb = dir / (s.id + "_rgb.png");
    const auto depth = dir / (s.id + "_depth.tiff");
    if (std::filesystem::exists(rgb)) s.rgb = io::read_png_rgb(rgb);
    if (std::filesystem::exists(depth)) s.depth = io::read_tiff_depth(depth);
    if (!s.rgb && !s.depth) throw DataError("sample " + s.id + ": missing files " + rgb.string() + " / " + depth.string());
  }
  return samples;
}

}  // namespace graspforge::dataset
