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

#include "graspforge/geometry/maps.hpp"

#include <algorithm>
#include <cmath>

#include "graspforge/errors.hpp"

namespace graspforge::geometry {

bool in_quality_band(const GraspRectangle& rect, double x, double y) {
  const double ux = std::cos(rect.theta), uy = std::sin(rect.theta);
  const double dx = x - rect.center.x, dy = y - rect.center.y;
  const double along = dx * ux + dy * uy;
  const double across = -dx * uy + dy * ux;
  return std::abs(along) <= rect.width / 2.0 && std::abs(across) <= rect.height / 6.0;
}

GraspMaps render_target_maps(std::span<const GraspRectangle> rectangles, int image_width, int image_height,
                             double w_max) {
  if (image_width <= 0 || image_height <= 0) throw InvalidArgument("render_target_maps needs a positive size");
  if (!(w_max > 0.0)) throw InvalidArgument("w_max must be positive");
  GraspMaps maps{ImageF(image_width, image_height), ImageF(image_width, image_height),
                 ImageF(image_width, image_height), ImageF(image_width, image_height)};
  for (const auto& rect : rectangles) {
    const auto code = encode_angle(rect.theta);
    const float w = static_cast<float>(std::clamp(rect.width / w_max, 0.0, 1.0));
    double x0 = rect.center.x, x1 = rect.center.x, y0 = rect.center.y, y1 = rect.center.y;
    for (const auto& c : rect.corners()) {
      x0 = std::min(x0, c.x);
      x1 = std::max(x1, c.x);
      y0 = std::min(y0, c.y);
      y1 = std::max(y1, c.y);
    }
    const int ix0 = std::max(0, static_cast<int>(std::floor(x0)));
    const int ix1 = std::min(image_width - 1, static_cast<int>(std::ceil(x1)));
    const int iy0 = std::max(0, static_cast<int>(std::floor(y0)));
    const int iy1 = std::min(image_height - 1, static_cast<int>(std::ceil(y1)));
    for (int y = iy0; y <= iy1; ++y) {
      for (int x = ix0; x <= ix1; ++x) {
        if (!in_quality_band(rect, x, y)) continue;
        maps.quality.at(x, y) = 1.0f;
        maps.cos2t.at(x, y) = static_cast<float>(code.cos2t);
        maps.sin2t.at(x, y) = static_cast<float>(code.sin2t);
        maps.width.at(x, y) = w;
      }
    }
  }
  return maps;
}

namespace {

int reflect(int i, int n) {
  // d c b a | a b c d | d c b a
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - i - 1;
  }
  return i;
}

std::vector<double> blur_double(const ImageF& image, double sigma) {
  const int w = image.width, h = image.height;
  std::vector<double> src(image.pixels.begin(), image.pixels.end());
  if (sigma <= 0.0) return src;
  const int radius = static_cast<int>(std::ceil(4.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double total = 0.0;
  for (int k = -radius; k <= radius; ++k) total += kernel[k + radius] = std::exp(-0.5 * k * k / (sigma * sigma));
  for (auto& k : kernel) k /= total;

  std::vector<double> tmp(src.size()), out(src.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) acc += kernel[k + radius] * src[y * w + reflect(x + k, w)];
      tmp[y * w + x] = acc;
    }
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) acc += kernel[k + radius] * tmp[reflect(y + k, h) * w + x];
      out[y * w + x] = acc;
    }
  }
  return out;
}

}  // namespace

ImageF gaussian_blur(const ImageF& image, double sigma) {
  if (image.channels != 1) throw InvalidArgument("gaussian_blur expects a single-channel image");
  const auto blurred = blur_double(image, sigma);
  ImageF out(image.width, image.height);
  std::transform(blurred.begin(), blurred.end(), out.pixels.begin(), [](double v) { return static_cast<float>(v); });
  return out;
}

std::vector<PixelGrasp> extract_grasps(const GraspMaps& maps, int max_grasps, double w_max,
                                       const PeakOptions& options) {
  const int w = maps.cols(), h = maps.rows();
  if (maps.cos2t.width != w || maps.sin2t.width != w || maps.width.width != w || maps.cos2t.height != h ||
      maps.sin2t.height != h || maps.width.height != h) {
    throw ShapeError("grasp maps do not share one shape");
  }
  if (max_grasps <= 0 || w == 0 || h == 0) return {};
  const std::vector<double> q = blur_double(maps.quality, options.sigma);
  const int win = std::max(1, static_cast<int>(std::ceil(options.min_distance)));
  constexpr double kFlat = 1e-12;

  // Candidate maxima: above threshold and not exceeded anywhere in the window.
  std::vector<char> is_max(q.size(), 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double v = q[y * w + x];
      if (!(v > options.threshold)) continue;
      bool ok = true;
      for (int dy = -win; dy <= win && ok; ++dy) {
        for (int dx = -win; dx <= win; ++dx) {
          const int yy = y + dy, xx = x + dx;
          if (yy < 0 || yy >= h || xx < 0 || xx >= w) continue;
          if (q[yy * w + xx] > v + kFlat) {
            ok = false;
            break;
          }
        }
      }
      is_max[y * w + x] = ok ? 1 : 0;
    }
  }

  // Collapse each flat-topped group of maxima to the member nearest its centroid.
  struct Peak {
    int x, y;
    double value;
  };
  std::vector<Peak> peaks;
  std::vector<char> seen(q.size(), 0);
  std::vector<int> stack, members;
  for (int start = 0; start < w * h; ++start) {
    if (!is_max[start] || seen[start]) continue;
    members.clear();
    stack.assign(1, start);
    seen[start] = 1;
    const double level = q[start];
    while (!stack.empty()) {
      const int idx = stack.back();
      stack.pop_back();
      members.push_back(idx);
      const int cx = idx % w, cy = idx / w;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int xx = cx + dx, yy = cy + dy;
          if (xx < 0 || yy < 0 || xx >= w || yy >= h) continue;
          const int n = yy * w + xx;
          if (!seen[n] && is_max[n] && std::abs(q[n] - level) <= kFlat) {
            seen[n] = 1;
            stack.push_back(n);
          }
        }
      }
    }
    double mx = 0.0, my = 0.0;
    for (int idx : members) {
      mx += idx % w;
      my += idx / w;
    }
    mx /= static_cast<double>(members.size());
    my /= static_cast<double>(members.size());
    int best = members.front();
    double best_d = 1e300;
    for (int idx : members) {
      const double d = std::hypot(idx % w - mx, idx / w - my);
      if (d < best_d - 1e-12 || (std::abs(d - best_d) <= 1e-12 && idx < best)) {
        best_d = d;
        best = idx;
      }
    }
    peaks.push_back({best % w, best / w, q[best]});
  }

  std::stable_sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) { return a.value > b.value; });
  std::vector<PixelGrasp> grasps;
  for (const auto& p : peaks) {
    if (static_cast<int>(grasps.size()) >= max_grasps) break;
    const bool spaced = std::all_of(grasps.begin(), grasps.end(), [&](const PixelGrasp& g) {
      return std::hypot(g.x - p.x, g.y - p.y) >= options.min_distance;
    });
    if (!spaced) continue;
    const double c = maps.cos2t.at(p.x, p.y), s = maps.sin2t.at(p.x, p.y);
    PixelGrasp g;
    g.x = p.x;
    g.y = p.y;
    g.theta = (c == 0.0 && s == 0.0) ? 0.0 : decode_angle(c, s);
    g.width = std::clamp(static_cast<double>(maps.width.at(p.x, p.y)), 0.0, 1.0) * w_max;
    g.quality = std::clamp(p.value, 0.0, 1.0);
    grasps.push_back(g);
  }
  return grasps;
}

}  // namespace graspforge::geometry
