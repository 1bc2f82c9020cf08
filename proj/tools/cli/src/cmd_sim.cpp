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
#include <chrono>
#include <fstream>
#include <map>
#include <random>

#include <spdlog/spdlog.h>

#include "command.hpp"
#include "graspforge/errors.hpp"
#include "graspforge/model/checkpoint.hpp"
#include "graspforge/sim/pick_place.hpp"
#include "graspforge/util/random.hpp"

namespace graspforge::cli {

namespace {

struct SimArgs {
  std::string checkpoint;
  int objects = 3;
  int trials = 10;
  int max_attempts = 10;
  std::uint64_t seed = 1;
  std::vector<std::string> kinds;
};

struct BenchArgs {
  std::string checkpoint;
  int n = 20;
  int warmup = 2;
  int input_size = 224;
  int base_width = 32;
  int channels = 4;
  int blocks = 5;
};

double percentile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const double pos = p * (v.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - lo) * (v[hi] - v[lo]);
}

}  // namespace

void register_simulate(CLI::App& app, CommonOptions& common, CommandBody& selected) {
  auto* sub = app.add_subcommand("simulate", "Run clutter-clearing pick trials in the analytic simulator");
  add_common_options(sub, common);
  auto a = std::make_shared<SimArgs>();
  sub->add_option("--checkpoint", a->checkpoint, "Checkpoint file")->required()->check(CLI::ExistingFile);
  sub->add_option("--objects", a->objects, "Objects per trial scene")->check(CLI::Range(1, 5));
  sub->add_option("--trials", a->trials, "Number of trials")->check(CLI::PositiveNumber);
  sub->add_option("--max-attempts", a->max_attempts, "Attempts per trial")->check(CLI::PositiveNumber);
  sub->add_option("--seed", a->seed, "Base seed; trial i uses a seed derived from it");
  sub->add_option("--kinds", a->kinds, "Shapes: bar, t-shape, flat-disk")
      ->delimiter(',')
      ->check(CLI::IsMember({"bar", "t-shape", "flat-disk"}));

  sub->callback([&selected, a] {
    selected = [a](RunContext& ctx) {
      auto ckpt = model::load_checkpoint(a->checkpoint);
      sim::TrialOptions options;
      options.num_objects = a->objects;
      options.max_attempts = a->max_attempts;
      if (!a->kinds.empty()) {
        options.kinds.clear();
        for (const auto& k : a->kinds) options.kinds.push_back(dataset::shape_kind_from_string(k));
      }
      std::vector<std::string> kind_names;
      for (auto k : options.kinds) kind_names.push_back(dataset::to_string(k));
      ctx.config = {{"checkpoint", a->checkpoint}, {"objects", a->objects},         {"trials", a->trials},
                    {"max_attempts", a->max_attempts}, {"seed", a->seed}, {"kinds", kind_names}};
      ctx.seeds = {a->seed};

      int attempts = 0, successes = 0, cleared = 0, total_objects = 0;
      std::map<std::string, int> reasons;
      for (int i = 0; i < a->trials; ++i) {
        options.seed = util::mix_seed(a->seed, static_cast<std::uint64_t>(i));
        const auto report = sim::run_clutter_trial(ckpt, options);
        std::ofstream(ctx.output("trial_" + std::to_string(i) + ".json")) << nlohmann::json(report).dump(2) << '\n';
        attempts += report.attempts;
        successes += report.successes;
        total_objects += report.num_objects;
        cleared += report.num_objects - report.objects_remaining;
        for (const auto& r : report.records) {
          if (!r.success) ++reasons[r.reason];
        }
        spdlog::info("trial {}: {}/{} picks succeeded, {} object(s) left", i, report.successes, report.attempts,
                     report.objects_remaining);
      }
      const double rate = attempts ? static_cast<double>(successes) / attempts : 0.0;
      nlohmann::json summary = {{"trials", a->trials},
                                {"attempts", attempts},
                                {"successes", successes},
                                {"success_rate", rate},
                                {"objects", total_objects},
                                {"objects_cleared", cleared},
                                {"failure_reasons", reasons}};
      std::ofstream(ctx.output("summary.json")) << summary.dump(2) << '\n';
      spdlog::info("grasp success rate {:.1f}% ({}/{}), cleared {}/{} objects", 100 * rate, successes, attempts,
                   cleared, total_objects);
      return kExitOk;
    };
  });
}

void register_bench(CLI::App& app, CommonOptions& common, CommandBody& selected) {
  auto* sub = app.add_subcommand("bench", "Time single-image forward passes on the CPU");
  add_common_options(sub, common);
  auto a = std::make_shared<BenchArgs>();
  sub->add_option("--checkpoint", a->checkpoint, "Checkpoint to time (default: a freshly initialized model)")
      ->check(CLI::ExistingFile);
  sub->add_option("--n", a->n, "Timed forward passes")->check(CLI::PositiveNumber);
  sub->add_option("--warmup", a->warmup, "Untimed warm-up passes")->check(CLI::NonNegativeNumber);
  sub->add_option("--input-size", a->input_size, "Input side without --checkpoint");
  sub->add_option("--base-width", a->base_width, "First-layer width without --checkpoint");
  sub->add_option("--channels", a->channels, "Input channels without --checkpoint");
  sub->add_option("--residual-blocks", a->blocks, "Residual blocks without --checkpoint");

  sub->callback([&selected, a] {
    selected = [a](RunContext& ctx) {
      std::optional<model::GrConvNet> owned;
      model::GrConvNet* net = nullptr;
      model::Checkpoint ckpt{model::GrConvNet(model::ModelConfig{}), {}};
      if (!a->checkpoint.empty()) {
        ckpt = model::load_checkpoint(a->checkpoint);
        net = &ckpt.model;
      } else {
        model::ModelConfig mc;
        mc.input_size = a->input_size;
        mc.base_width = a->base_width;
        mc.input_channels = a->channels;
        mc.num_residual_blocks = a->blocks;
        owned.emplace(mc);
        net = &*owned;
      }
      const auto& mc = net->config();
      ctx.config = {{"checkpoint", a->checkpoint}, {"n", a->n}, {"warmup", a->warmup}, {"model", mc}};

      std::mt19937_64 rng(7);
      std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
      std::vector<float> values(static_cast<std::size_t>(mc.input_channels) * mc.input_size * mc.input_size);
      for (auto& v : values) v = dist(rng);
      const auto input = ad::Tensor<float>::from({1, mc.input_channels, mc.input_size, mc.input_size}, values);

      ad::NoGradGuard no_grad;
      std::vector<double> timings;
      for (int i = 0; i < a->warmup + a->n; ++i) {
        const auto start = std::chrono::steady_clock::now();
        net->forward(input, ad::Mode::kEval);
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (i >= a->warmup) timings.push_back(ms);
      }
      double sum = 0;
      for (double t : timings) sum += t;
      nlohmann::json result = {{"device", "cpu"},
                               {"threads", 1},
                               {"input_size", mc.input_size},
                               {"parameters", net->param_count()},
                               {"timings_ms", timings},
                               {"mean_ms", sum / timings.size()},
                               {"median_ms", percentile(timings, 0.5)},
                               {"p95_ms", percentile(timings, 0.95)},
                               {"min_ms", *std::min_element(timings.begin(), timings.end())},
                               {"max_ms", *std::max_element(timings.begin(), timings.end())},
                               {"reference_gpu_ms", 20.0}};
      std::ofstream(ctx.timing_output("bench.json")) << result.dump(2) << '\n';
      spdlog::info("forward {}x{}: mean {:.1f} ms, median {:.1f} ms, p95 {:.1f} ms over {} runs", mc.input_size,
                   mc.input_size, result["mean_ms"].get<double>(), result["median_ms"].get<double>(),
                   result["p95_ms"].get<double>(), a->n);
      return kExitOk;
    };
  });
}

}  // namespace graspforge::cli
