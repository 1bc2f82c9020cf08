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

#include "graspforge/train/evaluate.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

#include "graspforge/dataset/preprocess.hpp"
#include "graspforge/errors.hpp"

namespace graspforge::train {

namespace {

ImageF to_image(const ad::Tensor<float>& t) {
  const int h = t.dim(2), w = t.dim(3);
  ImageF img(w, h, 1);
  const auto data = t.data();
  std::copy(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(img.pixels.size()), img.pixels.begin());
  return img;
}

}  // namespace

Prediction predict(model::GrConvNet& model, const dataset::Sample& sample, dataset::Modality modality,
                   double w_max, int top_k) {
  if (model.config().input_channels != dataset::channel_count(modality)) {
    throw ConfigMismatchError("model takes " + std::to_string(model.config().input_channels) +
                              " channels but modality " + dataset::to_string(modality) + " has " +
                              std::to_string(dataset::channel_count(modality)));
  }
  const dataset::Sample* ptr = &sample;
  const auto input = dataset::make_batch(std::span<const dataset::Sample* const>(&ptr, 1), modality);
  ad::NoGradGuard no_grad;
  const auto start = std::chrono::steady_clock::now();
  const auto out = model.forward(input, ad::Mode::kEval);
  Prediction p;
  p.latency_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  p.maps = {to_image(out.quality), to_image(out.cos2t), to_image(out.sin2t), to_image(out.width)};
  p.grasps = geometry::extract_grasps(p.maps, top_k, w_max);
  return p;
}

SeedReport evaluate_model(model::GrConvNet& model, std::span<const dataset::Sample> samples,
                          dataset::Modality modality, double w_max, std::uint64_t seed) {
  if (samples.empty()) throw DataError("evaluation needs a non-empty validation set");
  SeedReport report;
  report.seed = seed;
  double latency = 0.0;
  std::size_t matched = 0;
  for (const auto& sample : samples) {
    if (sample.rectangles.empty()) throw DataError("validation sample " + sample.id + " has no ground truth");
    const auto p = predict(model, sample, modality, w_max, 1);
    latency += p.latency_ms;
    SampleRecord r;
    r.id = sample.id;
    if (!p.grasps.empty()) {
      r.has_prediction = true;
      r.top = p.grasps.front();
      const auto detail = geometry::match_detail(geometry::to_rectangle(r.top), sample.rectangles);
      r.matched = detail.matched;
      r.best_iou = detail.best_iou;
      r.angle_error = detail.best_angle_error;
    }
    matched += r.matched;
    report.records.push_back(std::move(r));
  }
  report.accuracy = static_cast<double>(matched) / static_cast<double>(samples.size());
  report.mean_latency_ms = latency / static_cast<double>(samples.size());
  return report;
}

EvalReport evaluate(std::span<model::Checkpoint* const> checkpoints, std::span<const dataset::Sample> samples,
                    dataset::Modality modality, const std::string& split_name) {
  if (checkpoints.empty()) throw InvalidArgument("evaluation needs at least one checkpoint");
  if (samples.empty()) throw DataError("evaluation needs a non-empty validation set");
  EvalReport report;
  report.modality = dataset::to_string(modality);
  report.split = split_name;
  for (auto* ckpt : checkpoints) {
    if (!ckpt->meta.modality.empty() &&
        dataset::modality_from_string(ckpt->meta.modality) != modality) {
      throw ConfigMismatchError("checkpoint was trained on modality " + ckpt->meta.modality + ", not " +
                                dataset::to_string(modality));
    }
    report.seeds.push_back(evaluate_model(ckpt->model, samples, modality, ckpt->meta.w_max, ckpt->meta.seed));
  }
  for (const auto& s : report.seeds) {
    report.mean_accuracy += s.accuracy;
    report.mean_latency_ms += s.mean_latency_ms;
  }
  report.mean_accuracy /= static_cast<double>(report.seeds.size());
  report.mean_latency_ms /= static_cast<double>(report.seeds.size());
  return report;
}

void to_json(nlohmann::json& j, const SampleRecord& r) {
  j = {{"id", r.id}, {"matched", r.matched}, {"has_prediction", r.has_prediction}, {"best_iou", r.best_iou},
       {"angle_error_rad", r.angle_error}};
  if (r.has_prediction) {
    j["top"] = {{"x", r.top.x}, {"y", r.top.y}, {"theta_rad", r.top.theta}, {"width_px", r.top.width},
                {"quality", r.top.quality}};
  }
}

void to_json(nlohmann::json& j, const SeedReport& r) {
  j = {{"seed", r.seed}, {"accuracy", r.accuracy}, {"mean_latency_ms", r.mean_latency_ms}, {"records", r.records}};
}

void to_json(nlohmann::json& j, const EvalReport& r) {
  j = {{"schema_version", kEvalReportSchemaVersion},
       {"modality", r.modality},
       {"split", r.split},
       {"mean_accuracy", r.mean_accuracy},
       {"mean_latency_ms", r.mean_latency_ms},
       {"seeds", r.seeds}};
}

std::string format_report_table(std::span<const EvalReport> reports, std::span<const std::string> labels) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-28s %-8s %-6s %14s %12s\n", "Method", "Input", "Split", "Accuracy (%)",
                "Speed (ms)");
  out << line << std::string(72, '-') << '\n';
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    std::snprintf(line, sizeof line, "%-28s %-8s %-6s %14.1f %12.1f\n", i < labels.size() ? labels[i].c_str() : "",
                  r.modality.c_str(), r.split.c_str(), 100.0 * r.mean_accuracy, r.mean_latency_ms);
    out << line;
  }
  return out.str();
}

}  // namespace graspforge::train
