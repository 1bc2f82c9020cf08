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

#include <spdlog/spdlog.h>

#include "command.hpp"
#include "graspforge/dataset/annotations.hpp"
#include "graspforge/dataset/loaders.hpp"
#include "graspforge/dataset/preprocess.hpp"
#include "graspforge/dataset/synthetic.hpp"

namespace graspforge::cli {

namespace {

struct SynthArgs {
  std::size_t count = 512;
  std::uint64_t seed = 0;
  int size = 64;
  int min_objects = 1;
  int max_objects = 3;
};

struct PrepareArgs {
  std::string dataset = "cornell";
  std::string path;
  int size = 224;
};

}  // namespace

void register_synth(CLI::App& app, CommonOptions& common, CommandBody& selected) {
  auto* sub = app.add_subcommand("synth", "Generate a directory of synthetic scenes");
  add_common_options(sub, common);
  auto args = std::make_shared<SynthArgs>();
  auto binder = std::make_shared<ConfigBinder>();
  binder->option(sub, "--count", "/count", args->count, "Number of scenes");
  binder->option(sub, "--seed", "/seed", args->seed, "Dataset seed");
  binder->option(sub, "--size", "/size", args->size, "Image side in pixels");
  binder->option(sub, "--min-objects", "/min_objects", args->min_objects, "Fewest objects per scene");
  binder->option(sub, "--max-objects", "/max_objects", args->max_objects, "Most objects per scene");
  sub->callback([&selected, &common, args, binder] {
    selected = [&common, args, binder](RunContext& ctx) {
      const SynthArgs d;
      ctx.config = binder->resolve({{"count", d.count},
                                    {"seed", d.seed},
                                    {"size", d.size},
                                    {"min_objects", d.min_objects},
                                    {"max_objects", d.max_objects}},
                                   common.config_file);
      const auto& c = ctx.config;
      dataset::SynthSettings settings;
      settings.image_size = c.at("size").get<int>();
      const auto scenes = dataset::synth_dataset(c.at("count").get<std::size_t>(), c.at("seed").get<std::uint64_t>(),
                                                 settings, c.at("min_objects").get<int>(),
                                                 c.at("max_objects").get<int>());
      ctx.seeds = {c.at("seed").get<std::uint64_t>()};
      std::vector<dataset::Sample> samples;
      std::size_t rects = 0;
      for (const auto& s : scenes) {
        samples.push_back(s.sample);
        rects += s.sample.rectangles.size();
      }
      dataset::save_sample_directory(ctx.dir() / "samples", samples);
      ctx.add_outputs_under("samples");
      spdlog::info("wrote {} scenes ({} ground-truth grasps) to {}", samples.size(), rects,
                   (ctx.dir() / "samples").string());
      return kExitOk;
    };
  });
}

void register_prepare(CLI::App& app, CommonOptions& common, CommandBody& selected) {
  auto* sub = app.add_subcommand("prepare", "Convert a Cornell or Jacquard tree into canonical samples");
  add_common_options(sub, common);
  auto args = std::make_shared<PrepareArgs>();
  auto binder = std::make_shared<ConfigBinder>();
  binder->option(sub, "--dataset", "/dataset", args->dataset, "cornell or jacquard")
      ->check(CLI::IsMember({"cornell", "jacquard"}));
  binder->option(sub, "--path", "/path", args->path, "Dataset root directory");
  binder->option(sub, "--size", "/size", args->size, "Output side in pixels (center crop + resize)");
  sub->callback([&selected, &common, args, binder] {
    selected = [&common, args, binder](RunContext& ctx) {
      const PrepareArgs d;
      ctx.config = binder->resolve({{"dataset", d.dataset}, {"path", d.path}, {"size", d.size}}, common.config_file);
      const auto& c = ctx.config;
      const auto path = c.at("path").get<std::string>();
      if (path.empty()) throw UsageError("--path is required: point it at the dataset root");
      const bool cornell = c.at("dataset").get<std::string>() == "cornell";
      const auto raw = cornell ? dataset::load_cornell(path) : dataset::load_jacquard(path);
      std::size_t positives = 0, negatives = 0, kept = 0;
      std::vector<dataset::Sample> out;
      for (const auto& s : raw) {
        positives += s.rectangles.size();
        negatives += static_cast<std::size_t>(s.negative_count);
        out.push_back(dataset::crop_resize(s, c.at("size").get<int>()));
        kept += out.back().rectangles.size();
      }
      dataset::save_sample_directory(ctx.dir() / "samples", out);
      ctx.add_outputs_under("samples");
      const nlohmann::json stats{{"samples", raw.size()},
                                 {"positive_grasps", positives},
                                 {"negative_grasps", negatives},
                                 {"positive_grasps_after_crop", kept}};
      std::ofstream(ctx.output("stats.json")) << stats.dump(2) << '\n';
      spdlog::info("{} samples, {} positive / {} negative grasps ({} inside the crop)", raw.size(), positives,
                   negatives, kept);
      return kExitOk;
    };
  });
}

}  // namespace graspforge::cli
