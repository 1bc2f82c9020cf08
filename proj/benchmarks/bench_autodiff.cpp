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

#include <random>

#include <benchmark/benchmark.h>

#include "graspforge/ad/ops.hpp"

namespace {

using graspforge::ad::Tensor;

Tensor<float> random_tensor(graspforge::ad::Shape shape, std::uint64_t seed, bool grad = false) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> u(-1.0f, 1.0f);
  std::size_t n = 1;
  for (int d : shape) n *= static_cast<std::size_t>(d);
  std::vector<float> v(n);
  for (auto& x : v) x = u(rng);
  return Tensor<float>::from(shape, v, grad);
}

// Args: channels, spatial extent, kernel.
void BM_Conv2dForward(benchmark::State& state) {
  const int c = static_cast<int>(state.range(0)), hw = static_cast<int>(state.range(1)),
            k = static_cast<int>(state.range(2));
  const auto x = random_tensor({1, c, hw, hw}, 1);
  const auto w = random_tensor({c, c, k, k}, 2);
  const auto b = random_tensor({c}, 3);
  graspforge::ad::NoGradGuard guard;
  for (auto _ : state) benchmark::DoNotOptimize(graspforge::ad::conv2d(x, w, b, 1, k / 2));
  state.counters["MACs"] = benchmark::Counter(static_cast<double>(c) * c * k * k * hw * hw,
                                              benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_Conv2dForward)->Args({32, 56, 3})->Args({128, 56, 3})->Args({8, 64, 9})->Unit(benchmark::kMillisecond);

void BM_Conv2dBackward(benchmark::State& state) {
  const int c = static_cast<int>(state.range(0)), hw = static_cast<int>(state.range(1));
  auto x = random_tensor({2, c, hw, hw}, 1, true);
  auto w = random_tensor({c, c, 3, 3}, 2, true);
  auto b = random_tensor({c}, 3, true);
  for (auto _ : state) {
    auto loss = graspforge::ad::sum(graspforge::ad::conv2d(x, w, b, 1, 1));
    loss.backward();
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_Conv2dBackward)->Args({16, 32})->Args({32, 16})->Unit(benchmark::kMillisecond);

void BM_ConvTranspose2dForward(benchmark::State& state) {
  const int c = static_cast<int>(state.range(0)), hw = static_cast<int>(state.range(1));
  const auto x = random_tensor({1, 2 * c, hw, hw}, 1);
  const auto w = random_tensor({2 * c, c, 4, 4}, 2);
  const auto b = random_tensor({c}, 3);
  graspforge::ad::NoGradGuard guard;
  for (auto _ : state) benchmark::DoNotOptimize(graspforge::ad::conv_transpose2d(x, w, b, 2, 1, 0));
}
BENCHMARK(BM_ConvTranspose2dForward)->Args({32, 56})->Args({64, 28})->Unit(benchmark::kMillisecond);

void BM_BatchNormTrain(benchmark::State& state) {
  const int c = static_cast<int>(state.range(0));
  const auto x = random_tensor({8, c, 16, 16}, 1);
  const auto g = Tensor<float>::full({c}, 1.0f), beta = Tensor<float>::full({c}, 0.0f);
  auto stats = graspforge::ad::RunningStats<float>::identity(c);
  graspforge::ad::NoGradGuard guard;
  for (auto _ : state) {
    benchmark::DoNotOptimize(graspforge::ad::batch_norm2d(x, g, beta, stats, graspforge::ad::Mode::kTrain));
  }
}
BENCHMARK(BM_BatchNormTrain)->Arg(32)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
