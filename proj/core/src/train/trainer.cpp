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

#include "graspforge/train/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>

#include <spdlog/spdlog.h>

#include "graspforge/ad/ops.hpp"
#include "graspforge/dataset/augment.hpp"
#include "graspforge/dataset/loaders.hpp"
#include "graspforge/dataset/annotations.hpp"
#include "graspforge/dataset/preprocess.hpp"
#include "graspforge/dataset/synthetic.hpp"
#include "graspforge/errors.hpp"
#include "graspforge/geometry/maps.hpp"
#include "graspforge/util/random.hpp"

namespace graspforge::train {

namespace {

std::vector<dataset::Sample> scenes_to_samples(std::vector<dataset::SynthScene> scenes) {
  std::vector<dataset::Sample> out;
  out.reserve(scenes.size());
  for (auto& s : scenes) out.push_back(std::move(s.sample));
  return out;
}

std::vector<dataset::Sample> resize_all(const std::vector<dataset::Sample>& samples, int size, const char* part) {
  std::vector<dataset::Sample> out;
  out.reserve(samples.size());
  std::size_t dropped = 0;
  for (const auto& s : samples) {
    auto r = dataset::crop_resize(s, size);
    if (r.rectangles.empty()) {
      ++dropped;
      continue;
    }
    out.push_back(std::move(r));
  }
  if (dropped) spdlog::warn("{} {} sample(s) have no grasp left after cropping and were skipped", dropped, part);
  return out;
}

struct Targets {
  std::vector<float> quality, cos2t, sin2t, width;
};

void append_targets(Targets& t, const dataset::Sample& s, double w_max) {
  const auto maps = geometry::render_target_maps(s.rectangles, s.width(), s.height(), w_max);
  auto push = [](std::vector<float>& dst, const ImageF& img) { dst.insert(dst.end(), img.pixels.begin(), img.pixels.end()); };
  push(t.quality, maps.quality);
  push(t.cos2t, maps.cos2t);
  push(t.sin2t, maps.sin2t);
  push(t.width, maps.width);
}

struct Snapshot {
  std::vector<std::vector<float>> params;
  std::vector<std::vector<float>> means, vars;

  void capture(model::GrConvNet& m) {
    params.clear();
    means.clear();
    vars.clear();
    for (auto* p : m.parameters()) params.emplace_back(p->tensor.data().begin(), p->tensor.data().end());
    for (auto& s : m.running_stats()) {
      means.push_back(s.stats->mean);
      vars.push_back(s.stats->var);
    }
  }

  void restore(model::GrConvNet& m) const {
    auto ps = m.parameters();
    for (std::size_t i = 0; i < ps.size(); ++i) std::copy(params[i].begin(), params[i].end(), ps[i]->tensor.data().begin());
    auto stats = m.running_stats();
    for (std::size_t i = 0; i < stats.size(); ++i) {
      stats[i].stats->mean = means[i];
      stats[i].stats->var = vars[i];
    }
  }
};

}  // namespace

TrainData load_training_data(const TrainConfig& config) {
  config.validate();
  const int size = config.model.input_size;
  TrainData data;
  if (config.dataset == DatasetKind::kSynthetic) {
    dataset::SynthSettings settings;
    settings.image_size = size;
    const auto& sc = config.synthetic;
    data.train = scenes_to_samples(dataset::synth_dataset(sc.train_count, sc.seed, settings, sc.min_objects, sc.max_objects));
    if (sc.val_count > 0) {
      data.val = scenes_to_samples(
          dataset::synth_dataset(sc.val_count, util::mix_seed(sc.seed, 0x7a1), settings, sc.min_objects, sc.max_objects));
    }
    return data;
  }

  std::vector<dataset::Sample> all;
  switch (config.dataset) {
    case DatasetKind::kCornell: all = dataset::load_cornell(config.dataset_path); break;
    case DatasetKind::kJacquard: all = dataset::load_jacquard(config.dataset_path); break;
    default: all = dataset::load_sample_directory(config.dataset_path); break;
  }
  const auto split = dataset::make_splits(all, config.split);
  std::vector<dataset::Sample> train, val;
  std::vector<std::string> val_ids(split.val_ids);
  std::sort(val_ids.begin(), val_ids.end());
  for (auto& s : all) {
    (std::binary_search(val_ids.begin(), val_ids.end(), s.id) ? val : train).push_back(std::move(s));
  }
  data.train = resize_all(train, size, "training");
  data.val = resize_all(val, size, "validation");
  return data;
}

void write_log_row(std::ostream& out, const StepLog& r) {
  char line[256];
  std::snprintf(line, sizeof line, "%lld,%llu,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n", static_cast<long long>(r.step),
                static_cast<unsigned long long>(r.seed), r.loss_total, r.loss_q, r.loss_cos, r.loss_sin, r.loss_w,
                r.lr);
  out << line;
}

std::vector<SeedRun> train(const TrainConfig& config, const TrainData& data, const TrainOptions& options) {
  config.validate();
  if (data.train.empty()) throw DataError("training set is empty");
  const int size = config.model.input_size;
  for (const auto* part : {&data.train, &data.val}) {
    for (const auto& s : *part) {
      if (s.width() != size || s.height() != size) {
        throw ShapeError("sample " + s.id + " is " + std::to_string(s.width()) + "x" + std::to_string(s.height()) +
                         ", model expects " + std::to_string(size));
      }
      if (!s.has(config.modality)) {
        throw ConfigMismatchError("sample " + s.id + " lacks channels for modality " + dataset::to_string(config.modality));
      }
    }
  }
  if (config.learning_rate == 0.0) spdlog::warn("learning rate is 0: parameters will not change");
  const double w_max = config.resolved_w_max();

  std::ofstream log;
  if (options.output_dir) {
    std::filesystem::create_directories(*options.output_dir);
    log.open(*options.output_dir / "train_log.csv");
    log << kTrainLogHeader << '\n';
  }

  // Unaugmented targets are fixed; render them once.
  std::vector<Targets> cached(data.train.size());
  if (!config.augment) {
    for (std::size_t i = 0; i < data.train.size(); ++i) append_targets(cached[i], data.train[i], w_max);
  }

  std::vector<SeedRun> runs;
  for (const std::uint64_t seed : config.seeds) {
    model::ModelConfig mc = config.model;
    mc.init_seed = seed;
    model::GrConvNet net(mc);
    net.seed_dropout(util::mix_seed(seed, 0xd0));
    std::mt19937_64 rng(util::mix_seed(seed, 0x5eed));
    auto params = net.parameters();
    const ad::AdamOptions adam{config.learning_rate};

    std::vector<StepLog> steps;
    std::vector<double> val_accuracy;
    int best_epoch = 0;
    Snapshot best;
    double best_acc = -1.0;
    std::int64_t step = 0;
    bool stop = false;
    const auto start = std::chrono::steady_clock::now();

    std::vector<std::size_t> order(data.train.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    int epoch = 0;
    for (epoch = 1; epoch <= config.epochs && !stop; ++epoch) {
      std::shuffle(order.begin(), order.end(), rng);
      double epoch_loss = 0.0;
      int epoch_steps = 0;
      for (std::size_t b = 0; b < order.size() && !stop; b += static_cast<std::size_t>(config.batch_size)) {
        const std::size_t end = std::min(order.size(), b + static_cast<std::size_t>(config.batch_size));
        std::vector<dataset::Sample> augmented;
        std::vector<const dataset::Sample*> batch;
        Targets targets;
        if (config.augment) {
          augmented.reserve(end - b);
          for (std::size_t i = b; i < end; ++i) {
            augmented.push_back(dataset::augment(data.train[order[i]], dataset::random_augment_spec(rng, size)));
          }
          for (auto& s : augmented) {
            batch.push_back(&s);
            append_targets(targets, s, w_max);
          }
        } else {
          for (std::size_t i = b; i < end; ++i) {
            batch.push_back(&data.train[order[i]]);
            const auto& t = cached[order[i]];
            targets.quality.insert(targets.quality.end(), t.quality.begin(), t.quality.end());
            targets.cos2t.insert(targets.cos2t.end(), t.cos2t.begin(), t.cos2t.end());
            targets.sin2t.insert(targets.sin2t.end(), t.sin2t.begin(), t.sin2t.end());
            targets.width.insert(targets.width.end(), t.width.begin(), t.width.end());
          }
        }
        const ad::Shape map_shape{static_cast<int>(batch.size()), 1, size, size};
        const auto input = dataset::make_batch(batch, config.modality);
        const auto tq = ad::Tensor<float>::from(map_shape, std::move(targets.quality));
        const auto tc = ad::Tensor<float>::from(map_shape, std::move(targets.cos2t));
        const auto ts = ad::Tensor<float>::from(map_shape, std::move(targets.sin2t));
        const auto tw = ad::Tensor<float>::from(map_shape, std::move(targets.width));

        const auto out = net.forward(input, ad::Mode::kTrain);
        ad::Tensor<float> lq, lc, ls, lw;
        if (config.mask_positive_regions) {
          std::vector<float> weights(tq.numel());
          const auto q = tq.data();
          for (std::size_t i = 0; i < weights.size(); ++i) {
            weights[i] = q[i] > 0.0f ? 1.0f : static_cast<float>(config.background_weight);
          }
          const auto wt = ad::Tensor<float>::from(map_shape, std::move(weights));
          lq = ad::smooth_l1(out.quality, tq, wt);
          lc = ad::smooth_l1(out.cos2t, tc, wt);
          ls = ad::smooth_l1(out.sin2t, ts, wt);
          lw = ad::smooth_l1(out.width, tw, wt);
        } else {
          lq = ad::smooth_l1(out.quality, tq);
          lc = ad::smooth_l1(out.cos2t, tc);
          ls = ad::smooth_l1(out.sin2t, ts);
          lw = ad::smooth_l1(out.width, tw);
        }
        const auto& lw8 = config.loss_weights;
        auto total = ad::add(ad::add(ad::scale(lq, static_cast<float>(lw8.quality)), ad::scale(lc, static_cast<float>(lw8.cos))),
                             ad::add(ad::scale(ls, static_cast<float>(lw8.sin)), ad::scale(lw, static_cast<float>(lw8.width))));
        ++step;
        const double loss = total.item();
        if (!std::isfinite(loss)) {
          throw NumericError("training diverged: non-finite loss at step " + std::to_string(step) + " (seed " +
                             std::to_string(seed) + ")");
        }
        ad::zero_grad(std::span<ad::Parameter<float>* const>(params));
        total.backward();
        ad::adam_step(std::span<ad::Parameter<float>* const>(params), adam);

        StepLog row{step, seed, loss, lq.item(), lc.item(), ls.item(), lw.item(), config.learning_rate};
        steps.push_back(row);
        if (log.is_open()) write_log_row(log, row);
        if (options.on_step) options.on_step(row);
        epoch_loss += loss;
        ++epoch_steps;
        if (config.max_steps > 0 && step >= config.max_steps) stop = true;
      }

      const bool last = stop || epoch == config.epochs;
      std::string val_note;
      if (!data.val.empty() && (epoch % config.validate_every == 0 || last)) {
        const auto report = evaluate_model(net, data.val, config.modality, w_max, seed);
        val_accuracy.push_back(report.accuracy);
        if (report.accuracy > best_acc) {
          best_acc = report.accuracy;
          best.capture(net);
          best_epoch = epoch;
        }
        val_note = fmt::format(" val_acc={:.3f}", report.accuracy);
      }
      const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      spdlog::info("seed {} epoch {}/{} steps={} mean_loss={:.5f}{} ({:.0f}s)", seed, epoch, config.epochs, step,
                   epoch_steps ? epoch_loss / epoch_steps : 0.0, val_note, elapsed);
    }
    const int epochs_run = epoch - 1;
    if (data.val.empty()) {
      best.capture(net);
      best_epoch = epochs_run;
      best_acc = 0.0;
    }

    model::GrConvNet best_net(mc);
    best.restore(best_net);
    model::TrainingMetadata meta;
    meta.seed = seed;
    meta.epoch = best_epoch;
    meta.optimizer_step = step;
    meta.modality = dataset::to_string(config.modality);
    meta.w_max = w_max;
    meta.validation_accuracy = std::max(0.0, best_acc);
    if (options.output_dir) {
      const auto dir = *options.output_dir / ("seed_" + std::to_string(seed));
      std::filesystem::create_directories(dir);
      model::save_checkpoint(best_net, meta, dir / "best.grcn");
    }
    runs.push_back(SeedRun{seed, std::move(steps), std::move(val_accuracy), best_epoch,
                           model::Checkpoint{std::move(best_net), meta}});
  }
  return runs;
}

std::vector<AblationRow> ablate_modalities(const TrainConfig& base, const TrainData& data) {
  if (data.val.empty()) throw DataError("modality ablation needs a validation set");
  std::vector<std::string> val_ids;
  for (const auto& s : data.val) val_ids.push_back(s.id);
  std::vector<AblationRow> rows;
  for (auto modality : {dataset::Modality::kDepth, dataset::Modality::kRgb, dataset::Modality::kRgbd}) {
    TrainConfig c = base;
    c.modality = modality;
    c.model.input_channels = dataset::channel_count(modality);
    auto runs = train(c, data);
    std::vector<model::Checkpoint*> ckpts;
    for (auto& r : runs) ckpts.push_back(&r.best);
    AblationRow row;
    row.modality = modality;
    row.input_channels = c.model.input_channels;
    row.report = evaluate(ckpts, data.val, modality, dataset::to_string(c.split.mode));
    row.val_ids = val_ids;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace graspforge::train
