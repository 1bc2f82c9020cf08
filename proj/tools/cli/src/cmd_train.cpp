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

#include <fstream>
#include <iostream>

#include <spdlog/spdlog.h>

#include "command.hpp"
#include "graspforge/dataset/annotations.hpp"
#include "graspforge/dataset/loaders.hpp"
#include "graspforge/dataset/preprocess.hpp"
#include "graspforge/errors.hpp"
#include "graspforge/train/trainer.hpp"

namespace graspforge::cli {

namespace {

struct TrainArgs {
  std::string preset = "desk";
  std::string dataset, path, modality, split;
  int epochs = 0, batch_size = 0, fold = 0, num_folds = 0, base_width = 0, input_size = 0, blocks = 0,
      validate_every = 0, min_objects = 0, max_objects = 0;
  std::vector<std::uint64_t> seeds;
  std::uint64_t split_seed = 0, synth_seed = 0;
  double lr = 0, dropout = 0, w_max = 0, background_weight = 0;
  std::int64_t max_steps = 0;
  std::size_t train_count = 0, val_count = 0;
  bool augment = false, mask_positive = false;
  std::vector<double> loss_weights;
};

// Flags shared by train and eval that select and shape the data.
void bind_data_flags(CLI::App* sub, ConfigBinder& b, TrainArgs& a) {
  b.option(sub, "--dataset", "/dataset", a.dataset, "synthetic | cornell | jacquard | directory")
      ->check(CLI::IsMember({"synthetic", "cornell", "jacquard", "directory"}));
  b.option(sub, "--path", "/dataset_path", a.path, "Dataset root (required unless --dataset synthetic)");
  b.option(sub, "--fold", "/split/fold", a.fold, "Validation fold");
  b.option(sub, "--num-folds", "/split/num_folds", a.num_folds, "Number of folds");
  b.option(sub, "--split-seed", "/split/seed", a.split_seed, "Split shuffle seed");
  b.option(sub, "--train-count", "/synthetic/train_count", a.train_count, "Synthetic training scenes");
  b.option(sub, "--val-count", "/synthetic/val_count", a.val_count, "Synthetic held-out scenes");
  b.option(sub, "--synth-seed", "/synthetic/seed", a.synth_seed, "Synthetic dataset seed");
  b.option(sub, "--min-objects", "/synthetic/min_objects", a.min_objects, "Fewest objects per synthetic scene");
  b.option(sub, "--max-objects", "/synthetic/max_objects", a.max_objects, "Most objects per synthetic scene");
}

nlohmann::json preset_json(const std::string& preset) {
  if (preset == "desk") return train::desk_config();
  if (preset == "cornell") return train::cornell_config("");
  if (preset == "default") return train::TrainConfig{};
  throw UsageError("--preset must be desk, cornell or default");
}

train::TrainConfig finish_config(nlohmann::json& j) {
  train::TrainConfig c = j.get<train::TrainConfig>();
  c.model.input_channels = dataset::channel_count(c.modality);
  if (c.dataset != train::DatasetKind::kSynthetic && c.dataset_path.empty()) {
    throw UsageError("--path is required for --dataset " + train::to_string(c.dataset));
  }
  c.validate();
  j = c;
  return c;
}

std::vector<dataset::Sample> resize_with_grasps(std::vector<dataset::Sample> in, int size) {
  std::vector<dataset::Sample> out;
  for (auto& s : in) {
    auto r = dataset::crop_resize(s, size);
    if (!r.rectangles.empty()) out.push_back(std::move(r));
  }
  return out;
}

std::vector<dataset::Sample> load_all(const train::TrainConfig& c) {
  switch (c.dataset) {
    case train::DatasetKind::kCornell: return dataset::load_cornell(c.dataset_path);
    case train::DatasetKind::kJacquard: return dataset::load_jacquard(c.dataset_path);
    case train::DatasetKind::kDirectory: return dataset::load_sample_directory(c.dataset_path);
    default: break;
  }
  train::TrainConfig copy = c;
  auto data = train::load_training_data(copy);
  for (auto& s : data.train) data.val.push_back(std::move(s));
  return std::move(data.val);
}

// Samples for one evaluation split: "heldout" (synthetic validation scenes or
// the whole dataset), "all", or the validation fold of "iw" / "ow".
std::vector<dataset::Sample> eval_samples(const train::TrainConfig& c, const std::string& split, int size) {
  std::vector<dataset::Sample> pool;
  if (c.dataset == train::DatasetKind::kSynthetic) {
    train::TrainConfig copy = c;
    copy.model.input_size = size;
    copy.synthetic.train_count = std::max<std::size_t>(copy.synthetic.train_count, 1);
    auto data = train::load_training_data(copy);
    pool = split == "all" ? load_all(copy) : std::move(data.val);
    if (split == "train") pool = std::move(data.train);
  } else {
    pool = load_all(c);
  }
  if (split == "iw" || split == "ow") {
    auto spec = c.split;
    spec.mode = dataset::split_mode_from_string(split);
    const auto parts = dataset::make_splits(pool, spec);
    std::vector<std::string> ids(parts.val_ids);
    std::sort(ids.begin(), ids.end());
    std::vector<dataset::Sample> val;
    for (auto& s : pool) {
      if (std::binary_search(ids.begin(), ids.end(), s.id)) val.push_back(std::move(s));
    }
    pool = std::move(val);
  }
  return resize_with_grasps(std::move(pool), size);
}

// Accuracy fields go to <name>.json, latencies to timing_<name>.json.
void write_report(RunContext& ctx, const std::string& name, const train::EvalReport& report) {
  nlohmann::json j = report;
  nlohmann::json timing = {{"mean_latency_ms", j["mean_latency_ms"]}, {"seeds", nlohmann::json::array()}};
  j.erase("mean_latency_ms");
  for (auto& seed : j["seeds"]) {
    timing["seeds"].push_back({{"seed", seed["seed"]}, {"mean_latency_ms", seed["mean_latency_ms"]}});
    seed.erase("mean_latency_ms");
  }
  std::ofstream(ctx.output(name + ".json")) << j.dump(2) << '\n';
  std::ofstream(ctx.timing_output("timing_" + name + ".json")) << timing.dump(2) << '\n';
}

}  // namespace

void register_train(CLI::App& app, CommonOptions& common, CommandBody& selected) {
  auto* sub = app.add_subcommand("train", "Train one model per seed and report validation accuracy");
  add_common_options(sub, common);
  auto a = std::make_shared<TrainArgs>();
  auto b = std::make_shared<ConfigBinder>();
  sub->add_option("--preset", a->preset, "Base recipe: desk (default), cornell or default")
      ->check(CLI::IsMember({"desk", "cornell", "default"}));
  bind_data_flags(sub, *b, *a);
  b->option(sub, "--modality", "/modality", a->modality, "d | rgb | rgbd");
  b->option(sub, "--epochs", "/epochs", a->epochs, "Training epochs");
  b->option(sub, "--seed", "/seeds", a->seeds, "Comma-separated training seeds")->delimiter(',');
  b->option(sub, "--lr", "/learning_rate", a->lr, "Adam learning rate");
  b->option(sub, "--batch-size", "/batch_size", a->batch_size, "Mini-batch size");
  b->option(sub, "--max-steps", "/max_steps", a->max_steps, "Stop each seed after this many steps");
  b->option(sub, "--base-width", "/model/base_width", a->base_width, "Channels of the first layer");
  b->option(sub, "--input-size", "/model/input_size", a->input_size, "Model input side in pixels");
  b->option(sub, "--residual-blocks", "/model/num_residual_blocks", a->blocks, "Residual block count");
  b->option(sub, "--dropout", "/model/dropout_rate", a->dropout, "Dropout rate before the heads");
  b->option(sub, "--w-max", "/w_max", a->w_max, "Width normalization in pixels (0: scale with input size)");
  b->option(sub, "--validate-every", "/validate_every", a->validate_every, "Epochs between validations");
  b->option(sub, "--background-weight", "/background_weight", a->background_weight,
            "Background loss weight with --mask-positive");
  b->flag(sub, "--augment", "/augment", a->augment, "Online rotation/zoom/crop augmentation");
  b->flag(sub, "--mask-positive", "/mask_positive_regions", a->mask_positive, "Down-weight background pixels");
  sub->add_option("--split", a->split, "iw | ow | all (train and validate on every sample)")
      ->check(CLI::IsMember({"iw", "ow", "all"}));
  sub->add_option("--loss-weights", a->loss_weights, "Quality,cos,sin,width loss weights")
      ->delimiter(',')
      ->expected(4);

  sub->callback([&selected, &common, a, b] {
    selected = [&common, a, b](RunContext& ctx) {
      nlohmann::json j = b->resolve(preset_json(a->preset), common.config_file);
      const bool all = a->split == "all";
      if (!a->split.empty() && !all) j["split"]["mode"] = a->split;
      if (!a->loss_weights.empty()) {
        j["loss_weights"] = {{"quality", a->loss_weights[0]}, {"cos", a->loss_weights[1]},
                             {"sin", a->loss_weights[2]}, {"width", a->loss_weights[3]}};
      }
      auto config = finish_config(j);
      ctx.config = j;
      ctx.config["train_on_all"] = all;
      ctx.seeds = config.seeds;

      train::TrainData data;
      if (all) {
        data.train = resize_with_grasps(load_all(config), config.model.input_size);
        data.val = data.train;
      } else {
        data = train::load_training_data(config);
      }
      spdlog::info("training on {} samples, validating on {}", data.train.size(), data.val.size());

      train::TrainOptions options;
      options.output_dir = ctx.dir();
      auto runs = train::train(config, data, options);
      ctx.output("train_log.csv");
      for (const auto& r : runs) ctx.output("seed_" + std::to_string(r.seed) + "/best.grcn");

      if (config.learning_rate == 0.0) {
        std::size_t changed = 0, total = 0;
        for (auto& r : runs) {
          model::ModelConfig mc = config.model;
          mc.init_seed = r.seed;
          model::GrConvNet fresh(mc);
          auto a_params = fresh.parameters();
          auto b_params = r.best.model.parameters();
          for (std::size_t i = 0; i < a_params.size(); ++i) {
            ++total;
            changed += !std::equal(a_params[i]->tensor.data().begin(), a_params[i]->tensor.data().end(),
                                   b_params[i]->tensor.data().begin());
          }
        }
        spdlog::info("sanity: {} of {} parameter tensors changed with learning rate 0", changed, total);
      }

      if (!data.val.empty()) {
        std::vector<model::Checkpoint*> ckpts;
        for (auto& r : runs) ckpts.push_back(&r.best);
        const auto report =
            train::evaluate(ckpts, data.val, config.modality, all ? "all" : dataset::to_string(config.split.mode));
        write_report(ctx, "report", report);
        const std::vector<std::string> labels{"GR-ConvNet (" + std::to_string(runs.size()) + " seeds)"};
        const auto table = train::format_report_table(std::span(&report, 1), labels);
        std::ofstream(ctx.timing_output("table.txt")) << table;
        std::cout << table;
      }
      return kExitOk;
    };
  });
}

void register_eval(CLI::App& app, CommonOptions& common, CommandBody& selected) {
  auto* sub = app.add_subcommand("eval", "Evaluate checkpoints with the rectangle metric");
  add_common_options(sub, common);
  auto a = std::make_shared<TrainArgs>();
  auto checkpoints = std::make_shared<std::vector<std::string>>();
  auto splits = std::make_shared<std::vector<std::string>>();
  auto b = std::make_shared<ConfigBinder>();
  sub->add_option("--checkpoint", *checkpoints, "Checkpoint file(s), one per seed")->required()->delimiter(',');
  bind_data_flags(sub, *b, *a);
  sub->add_option("--modality", a->modality, "d | rgb | rgbd (default: from the checkpoint)");
  sub->add_option("--split", *splits, "heldout | all | train | iw | ow; repeat for several reports")
      ->delimiter(',')
      ->check(CLI::IsMember({"heldout", "all", "train", "iw", "ow"}));

  sub->callback([&selected, &common, a, b, checkpoints, splits] {
    selected = [&common, a, b, checkpoints, splits](RunContext& ctx) {
      std::vector<model::Checkpoint> loaded;
      for (const auto& path : *checkpoints) loaded.push_back(model::load_checkpoint(path));
      const auto& first = loaded.front();
      const auto modality = dataset::modality_from_string(
          !a->modality.empty() ? a->modality : (first.meta.modality.empty() ? "rgbd" : first.meta.modality));

      nlohmann::json base = train::desk_config();
      base["model"] = first.model.config();
      base["modality"] = dataset::to_string(modality);
      nlohmann::json j = b->resolve(base, common.config_file);
      auto config = finish_config(j);
      std::vector<std::string> split_names = splits->empty() ? std::vector<std::string>{"heldout"} : *splits;
      ctx.config = j;
      ctx.config["checkpoints"] = *checkpoints;
      ctx.config["splits"] = split_names;
      for (const auto& c : loaded) ctx.seeds.push_back(c.meta.seed);

      std::vector<model::Checkpoint*> ptrs;
      for (auto& c : loaded) ptrs.push_back(&c);
      std::vector<train::EvalReport> reports;
      std::vector<std::string> labels;
      for (const auto& split : split_names) {
        const auto samples = eval_samples(config, split, first.model.config().input_size);
        spdlog::info("evaluating {} checkpoint(s) on {} samples ({})", ptrs.size(), samples.size(), split);
        reports.push_back(train::evaluate(ptrs, samples, modality, split));
        write_report(ctx, "report_" + split, reports.back());
        labels.push_back("GR-ConvNet-" + std::string(modality == dataset::Modality::kDepth ? "D"
                                                    : modality == dataset::Modality::kRgb ? "RGB"
                                                                                          : "RGB-D"));
      }
      const auto table = train::format_report_table(reports, labels);
      std::ofstream(ctx.timing_output("table.txt")) << table;
      std::cout << table;
      return kExitOk;
    };
  });
}

}  // namespace graspforge::cli
