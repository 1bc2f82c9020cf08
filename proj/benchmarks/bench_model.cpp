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

#include <benchmark/benchmark.h>

#include "graspforge/dataset/preprocess.hpp"
#include "graspforge/dataset/synthetic.hpp"
#include "graspforge/model/grconvnet.hpp"
#include "graspforge/train/config.hpp"

namespace {

using namespace graspforge;

// Arg: input size; width follows the frozen recipes (32 at 224 px, 8 below).
void BM_ForwardEval(benchmark::State& state) {
  model::ModelConfig c;
  c.input_size = static_cast<int>(state.range(0));
  if (c.input_size < 224) c.base_width = 8;
  model::GrConvNet net(c);
  const auto x = ad::Tensor<float>::full({1, 4, c.input_size, c.input_size}, 0.1f);
  ad::NoGradGuard guard;
  for (auto _ : state) benchmark::DoNotOptimize(net.forward(x, ad::Mode::kEval));
  state.counters["params"] = static_cast<double>(net.param_count());
}
BENCHMARK(BM_ForwardEval)->Arg(64)->Arg(224)->Unit(benchmark::kMillisecond);

void BM_DeskTrainingStep(benchmark::State& state) {
  const auto cfg = train::desk_config();
  model::GrConvNet net(cfg.model);
  std::vector<dataset::Sample> samples;
  for (int i = 0; i < cfg.batch_size; ++i) samples.push_back(dataset::synth_scene(i, cfg.model.input_size, 2));
  std::vector<const dataset::Sample*> ptrs;
  for (const auto& s : samples) ptrs.push_back(&s);
  const auto x = dataset::make_batch(ptrs, cfg.modality);
  for (auto _ : state) {
    const auto maps = net.forward(x, ad::Mode::kTrain);
    auto loss = ad::add(ad::add(ad::sum(maps.quality), ad::sum(maps.width)), ad::add(ad::sum(maps.cos2t), ad::sum(maps.sin2t)));
    loss.backward();
    for (auto* p : net.parameters()) p->tensor.zero_grad();
  }
}
BENCHMARK(BM_DeskTrainingStep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
