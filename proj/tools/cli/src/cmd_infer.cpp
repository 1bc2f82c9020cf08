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

#include <algorithm>
#include <cmath>
#include <fstream>

#include <spdlog/spdlog.h>

#include "command.hpp"
#include "graspforge/dataset/preprocess.hpp"
#include "graspforge/errors.hpp"
#include "graspforge/geometry/serialize.hpp"
#include "graspforge/geometry/transforms.hpp"
#include "graspforge/io/image_io.hpp"
#include "graspforge/train/evaluate.hpp"

namespace graspforge::cli {

namespace {

using Rgb = std::array<std::uint8_t, 3>;

constexpr Rgb kClosingEdge{230, 40, 40};
constexpr Rgb kFingerEdge{40, 200, 60};

void draw_line(ImageU8& img, geometry::Point2 a, geometry::Point2 b, Rgb color) {
  const int steps = static_cast<int>(std::ceil(std::max(std::abs(b.x - a.x), std::abs(b.y - a.y)))) + 1;
  for (int i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    const int x = static_cast<int>(std::lround(a.x + t * (b.x - a.x)));
    const int y = static_cast<int>(std::lround(a.y + t * (b.y - a.y)));
    if (!img.contains(x, y)) continue;
    for (int c = 0; c < 3; ++c) img.at(x, y, c) = color[c];
  }
}

ImageU8 base_image(const dataset::Sample& s) {
  if (s.rgb) return *s.rgb;
  const auto& d = *s.depth;
  float lo = 1e30f, hi = -1e30f;
  for (float v : d.pixels) {
    if (v > 0 && std::isfinite(v)) lo = std::min(lo, v), hi = std::max(hi, v);
  }
  ImageU8 out(d.width, d.height, 3);
  for (int y = 0; y < d.height; ++y) {
    for (int x = 0; x < d.width; ++x) {
      const float v = d.at(x, y);
      const double t = (v > 0 && std::isfinite(v) && hi > lo) ? (hi - v) / (hi - lo) : 0.0;
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = static_cast<std::uint8_t>(std::lround(255 * t));
    }
  }
  return out;
}

ImageU8 overlay(const dataset::Sample& s, std::span<const geometry::PixelGrasp> grasps, int scale) {
  const ImageU8 src = base_image(s);
  ImageU8 img(src.width * scale, src.height * scale, 3);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      for (int c = 0; c < 3; ++c) img.at(x, y, c) = src.at(x / scale, y / scale, c);
    }
  }
  auto up = [scale](geometry::Point2 p) {
    return geometry::Point2{(p.x + 0.5) * scale - 0.5, (p.y + 0.5) * scale - 0.5};
  };
  for (const auto& g : grasps) {
    const auto c = geometry::to_rectangle(g).corners();
    for (int e = 0; e < 4; ++e) {
      draw_line(img, up(c[e]), up(c[(e + 1) % 4]), e % 2 == 0 ? kClosingEdge : kFingerEdge);
    }
  }
  return img;
}

// Blue-to-red ramp for values in [0, 1].
ImageU8 heatmap(const ImageF& map, double lo, double hi) {
  ImageU8 img(map.width, map.height, 3);
  for (int y = 0; y < map.height; ++y) {
    for (int x = 0; x < map.width; ++x) {
      const double t = std::clamp((map.at(x, y) - lo) / (hi - lo), 0.0, 1.0);
      img.at(x, y, 0) = static_cast<std::uint8_t>(std::lround(255 * std::clamp(1.5 - std::abs(4 * t - 3), 0.0, 1.0)));
      img.at(x, y, 1) = static_cast<std::uint8_t>(std::lround(255 * std::clamp(1.5 - std::abs(4 * t - 2), 0.0, 1.0)));
      img.at(x, y, 2) = static_cast<std::uint8_t>(std::lround(255 * std::clamp(1.5 - std::abs(4 * t - 1), 0.0, 1.0)));
    }
  }
  return img;
}

ImageF angle_map(const geometry::GraspMaps& m) {
  ImageF out(m.cols(), m.rows());
  for (std::size_t i = 0; i < out.pixels.size(); ++i) {
    const double c = m.cos2t.pixels[i], s = m.sin2t.pixels[i];
    out.pixels[i] = (c == 0.0 && s == 0.0) ? 0.0f : static_cast<float>(geometry::decode_angle(c, s));
  }
  return out;
}

struct Camera {
  geometry::CameraIntrinsics intrinsics;
  geometry::HandEyeTransform hand_eye;
};

Camera read_camera(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open camera file " + path);
  const auto j = nlohmann::json::parse(in);
  Camera cam;
  cam.intrinsics.fx = j.at("fx");
  cam.intrinsics.fy = j.at("fy");
  cam.intrinsics.cx = j.at("cx");
  cam.intrinsics.cy = j.at("cy");
  cam.intrinsics.depth_scale = j.value("depth_scale", 1.0);
  cam.intrinsics.validate();
  if (j.contains("hand_eye")) {
    const auto& h = j["hand_eye"];
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) cam.hand_eye.rotation(r, c) = h.at("rotation").at(r).at(c);
      cam.hand_eye.translation(r) = h.at("translation").at(r);
    }
    cam.hand_eye.validate();
  }
  return cam;
}

geometry::PixelGrasp to_original(const geometry::PixelGrasp& g, const dataset::CropResize& crop) {
  const double k = crop.scale();
  geometry::PixelGrasp out = g;
  out.x = (g.x + 0.5) / k - 0.5 + crop.x0;
  out.y = (g.y + 0.5) / k - 0.5 + crop.y0;
  out.width = g.width / k;
  return out;
}

struct InferArgs {
  std::string checkpoint, modality, camera;
  std::vector<std::string> images, depths;
  int top_k = 5;
  int overlay_scale = 2;
  bool no_heatmaps = false;
};

}  // namespace

void register_infer(CLI::App& app, CommonOptions& common, CommandBody& selected) {
  auto* sub = app.add_subcommand("infer", "Predict grasps for images and write overlays and heatmaps");
  add_common_options(sub, common);
  auto a = std::make_shared<InferArgs>();
  sub->add_option("--checkpoint", a->checkpoint, "Checkpoint file")->required()->check(CLI::ExistingFile);
  sub->add_option("--image", a->images, "RGB PNG (repeatable)");
  sub->add_option("--depth", a->depths, "Depth TIFF in meters (repeatable, paired with --image by order)");
  sub->add_option("--modality", a->modality, "d | rgb | rgbd (must match the checkpoint)");
  sub->add_option("--top-k", a->top_k, "Grasps per image")->check(CLI::PositiveNumber);
  sub->add_option("--overlay-scale", a->overlay_scale, "Overlay upscale factor")->check(CLI::Range(1, 16));
  sub->add_option("--camera", a->camera, "JSON with fx, fy, cx, cy and optional hand_eye {rotation, translation}")
      ->check(CLI::ExistingFile);
  sub->add_flag("--no-heatmaps", a->no_heatmaps, "Skip the per-head heatmaps");

  sub->callback([&selected, a] {
    selected = [a](RunContext& ctx) {
      auto ckpt = model::load_checkpoint(a->checkpoint);
      const std::string trained = ckpt.meta.modality.empty() ? "rgbd" : ckpt.meta.modality;
      if (!a->modality.empty() && a->modality != trained) {
        throw ConfigMismatchError("--modality " + a->modality + " but the checkpoint was trained on " + trained);
      }
      const auto modality = dataset::modality_from_string(trained);
      const std::size_t n = std::max(a->images.size(), a->depths.size());
      if (n == 0) throw UsageError("give at least one --image or --depth");
      if (!a->images.empty() && !a->depths.empty() && a->images.size() != a->depths.size()) {
        throw UsageError("--image and --depth must be given the same number of times");
      }
      std::optional<Camera> camera;
      if (!a->camera.empty()) camera = read_camera(a->camera);
      ctx.config = {{"checkpoint", a->checkpoint}, {"images", a->images},     {"depths", a->depths},
                    {"modality", trained},         {"top_k", a->top_k},       {"overlay_scale", a->overlay_scale},
                    {"camera", a->camera}};
      ctx.seeds = {ckpt.meta.seed};

      const int size = ckpt.model.config().input_size;
      for (std::size_t i = 0; i < n; ++i) {
        dataset::Sample s;
        const std::string& primary = !a->images.empty() ? a->images[i] : a->depths[i];
        s.id = std::filesystem::path(primary).stem().string();
        if (!a->images.empty()) s.rgb = io::read_png_rgb(a->images[i]);
        if (!a->depths.empty()) s.depth = io::read_tiff_depth(a->depths[i]);
        if (s.rgb && s.depth && (s.rgb->width != s.depth->width || s.rgb->height != s.depth->height)) {
          throw DataError(s.id + ": image and depth sizes differ");
        }
        if (!s.has(modality)) {
          throw ConfigMismatchError("checkpoint expects " + trained + " input but " + s.id + " lacks a channel");
        }
        const auto crop = dataset::CropResize::center(s.width(), s.height(), size);
        const auto net_input = dataset::crop_resize(s, size);
        const auto pred = train::predict(ckpt.model, net_input, modality, ckpt.meta.w_max, a->top_k);

        std::vector<geometry::PixelGrasp> original;
        for (const auto& g : pred.grasps) original.push_back(to_original(g, crop));
        std::ofstream out(ctx.output(s.id + "_grasps.jsonl"));
        if (camera && s.depth) {
          std::vector<geometry::RobotGrasp> robot;
          std::vector<geometry::PixelGrasp> valid;
          for (const auto& g : original) {
            try {
              robot.push_back(geometry::image_to_robot(g, *s.depth, camera->intrinsics, camera->hand_eye));
              valid.push_back(g);
            } catch (const InvalidArgument& e) {
              spdlog::warn("{}: grasp at ({:.1f}, {:.1f}) skipped: {}", s.id, g.x, g.y, e.what());
            }
          }
          geometry::write_grasp_lines(out, valid, robot);
        } else {
          geometry::write_grasp_lines(out, original);
        }
        io::write_png(ctx.output(s.id + "_overlay.png"), overlay(s, original, a->overlay_scale));
        if (!a->no_heatmaps) {
          io::write_png(ctx.output(s.id + "_quality.png"), heatmap(pred.maps.quality, 0.0, 1.0));
          io::write_png(ctx.output(s.id + "_angle.png"),
                        heatmap(angle_map(pred.maps), -std::numbers::pi / 2, std::numbers::pi / 2));
          io::write_png(ctx.output(s.id + "_width.png"), heatmap(pred.maps.width, 0.0, 1.0));
        }
        spdlog::info("{}: {} grasp(s), forward {:.1f} ms", s.id, original.size(), pred.latency_ms);
      }
      return kExitOk;
    };
  });
}

}  // namespace graspforge::cli
