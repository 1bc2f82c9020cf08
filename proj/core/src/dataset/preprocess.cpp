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

#include "graspforge/dataset/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include <spdlog/spdlog.h>

#include "graspforge/errors.hpp"

namespace graspforge::dataset {

bool is_depth_hole(float value) { return std::isnan(value) || value == 0.0f; }

ImageF inpaint_depth(const ImageF& depth) {
  if (depth.channels != 1) throw DataError("depth image must have one channel");
  ImageF out = depth;
  std::vector<unsigned char> valid(out.pixels.size());
  std::size_t holes = 0;
  for (std::size_t i = 0; i < out.pixels.size(); ++i) {
    valid[i] = !is_depth_hole(out.pixels[i]);
    holes += !valid[i];
  }
  if (holes == out.pixels.size()) throw DataError("depth image has no valid pixel to inpaint from");

  std::vector<std::pair<std::size_t, float>> updates;
  while (holes > 0) {
    updates.clear();
    for (int y = 0; y < out.height; ++y) {
      for (int x = 0; x < out.width; ++x) {
        const std::size_t i = out.index(x, y);
        if (valid[i]) continue;
        double sum = 0.0;
        int count = 0;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if ((dx || dy) && out.contains(x + dx, y + dy) && valid[out.index(x + dx, y + dy)]) {
              sum += out.at(x + dx, y + dy);
              ++count;
            }
          }
        }
        if (count) updates.emplace_back(i, static_cast<float>(sum / count));
      }
    }
    for (const auto& [i, v] : updates) {
      out.pixels[i] = v;
      valid[i] = 1;
    }
    holes -= updates.size();
  }
  return out;
}

CropResize CropResize::center(int width, int height, int out_size) {
  if (width < 1 || height < 1) throw DataError("cannot crop an empty image");
  if (out_size < 1) throw InvalidArgument("output size must be positive");
  CropResize c;
  c.side = std::min(width, height);
  c.x0 = (width - c.side) / 2;
  c.y0 = (height - c.side) / 2;
  c.out_size = out_size;
  return c;
}

geometry::Point2 CropResize::apply(geometry::Point2 p) const {
  const double k = scale();
  return {(p.x - x0 + 0.5) * k - 0.5, (p.y - y0 + 0.5) * k - 0.5};
}

geometry::GraspRectangle CropResize::apply(const geometry::GraspRectangle& r) const {
  const double k = scale();
  return {apply(r.center), r.theta, r.width * k, r.height * k};
}

bool rectangle_in_bounds(const geometry::GraspRectangle& r, int width, int height) {
  for (const auto& c : r.corners()) {
    if (c.x < -0.5 || c.y < -0.5 || c.x > width - 0.5 || c.y > height - 0.5) return false;
  }
  return true;
}

namespace {

template <typename T>
Image<T> resample(const Image<T>& src, const CropResize& map) {
  Image<T> out(map.out_size, map.out_size, src.channels);
  const double inv = 1.0 / map.scale();
  for (int v = 0; v < map.out_size; ++v) {
    const double sy = std::clamp((v + 0.5) * inv - 0.5 + map.y0, 0.0, src.height - 1.0);
    const int y0 = static_cast<int>(std::floor(sy));
    const int y1 = std::min(y0 + 1, src.height - 1);
    const double fy = sy - y0;
    for (int u = 0; u < map.out_size; ++u) {
      const double sx = std::clamp((u + 0.5) * inv - 0.5 + map.x0, 0.0, src.width - 1.0);
      const int x0 = static_cast<int>(std::floor(sx));
      const int x1 = std::min(x0 + 1, src.width - 1);
      const double fx = sx - x0;
      for (int c = 0; c < src.channels; ++c) {
        const double top = (1 - fx) * src.at(x0, y0, c) + fx * src.at(x1, y0, c);
        const double bottom = (1 - fx) * src.at(x0, y1, c) + fx * src.at(x1, y1, c);
        const double value = (1 - fy) * top + fy * bottom;
        if constexpr (std::is_integral_v<T>) {
          out.at(u, v, c) = static_cast<T>(std::clamp(std::lround(value), 0L, 255L));
        } else {
          out.at(u, v, c) = static_cast<T>(value);
        }
      }
    }
  }
  return out;
}

}  // namespace

Sample crop_resize(const Sample& sample, int out_size) {
  if (!sample.rgb && !sample.depth) throw DataError("sample " + sample.id + " has neither RGB nor depth");
  const auto map = CropResize::center(sample.width(), sample.height(), out_size);
  Sample out;
  out.id = sample.id;
  out.object_id = sample.object_id;
  out.source = sample.source;
  out.negative_count = sample.negative_count;
  if (sample.depth) {
    const bool has_holes = std::any_of(sample.depth->pixels.begin(), sample.depth->pixels.end(), is_depth_hole);
    const ImageF filled = has_holes ? inpaint_depth(*sample.depth) : *sample.depth;
    out.depth = map.identity() ? filled : resample(filled, map);
  }
  if (sample.rgb) out.rgb = map.identity() ? *sample.rgb : resample(*sample.rgb, map);
  int dropped = 0;
  for (const auto& r : sample.rectangles) {
    auto mapped = map.identity() ? r : map.apply(r);
    if (rectangle_in_bounds(mapped, out_size, out_size)) {
      out.rectangles.push_back(mapped);
    } else {
      ++dropped;
    }
  }
  if (dropped) spdlog::debug("sample {}: {} rectangle(s) left the crop", sample.id, dropped);
  return out;
}

std::vector<float> input_planes(const Sample& sample, Modality modality) {
  if (!sample.has(modality)) {
    throw ConfigMismatchError("sample " + sample.id + " lacks the channels needed for modality " +
                              to_string(modality));
  }
  const int w = sample.width(), h = sample.height();
  const std::size_t plane = static_cast<std::size_t>(w) * h;
  std::vector<float> out;
  out.reserve(plane * static_cast<std::size_t>(channel_count(modality)));

  if (modality != Modality::kRgb) {
    const auto& depth = *sample.depth;
    double mean = 0.0;
    for (float d : depth.pixels) mean += is_depth_hole(d) ? 0.0 : d;
    std::size_t valid = std::count_if(depth.pixels.begin(), depth.pixels.end(), [](float d) { return !is_depth_hole(d); });
    mean = valid ? mean / static_cast<double>(valid) : 0.0;
    for (float d : depth.pixels) {
      const double centered = is_depth_hole(d) ? 0.0 : d - mean;
      out.push_back(static_cast<float>(std::clamp(centered, -1.0, 1.0)));
    }
  }
  if (modality != Modality::kDepth) {
    const auto& rgb = *sample.rgb;
    for (int c = 0; c < 3; ++c) {
      double mean = 0.0;
      for (std::size_t i = 0; i < plane; ++i) mean += rgb.pixels[i * 3 + c];
      mean /= 255.0 * static_cast<double>(plane);
      for (std::size_t i = 0; i < plane; ++i) {
        out.push_back(static_cast<float>(rgb.pixels[i * 3 + c] / 255.0 - mean));
      }
    }
  }
  return out;
}

ad::Tensor<float> make_batch(std::span<const Sample* const> samples, Modality modality) {
  if (samples.empty()) throw InvalidArgument("cannot build an empty batch");
  const int w = samples.front()->width(), h = samples.front()->height();
  std::vector<float> values;
  for (const Sample* s : samples) {
    if (s->width() != w || s->height() != h) throw ShapeError("batch samples differ in size");
    auto planes = input_planes(*s, modality);
    values.insert(values.end(), planes.begin(), planes.end());
  }
  return ad::Tensor<float>::from({static_cast<int>(samples.size()), channel_count(modality), h, w},
                                 std::move(values));
}

Preprocessed preprocess(const Sample& sample, int out_size, Modality modality) {
  Preprocessed out{crop_resize(sample, out_size), {}};
  const Sample* ptr = &out.sample;
  out.input = make_batch(std::span<const Sample* const>(&ptr, 1), modality);
  return out;
}

}  // namespace graspforge::dataset
