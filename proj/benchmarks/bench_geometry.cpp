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

#include <numbers>
#include <random>

#include <benchmark/benchmark.h>

#include "graspforge/geometry/grasp.hpp"
#include "graspforge/geometry/maps.hpp"

namespace {

using namespace graspforge::geometry;

std::vector<GraspRectangle> random_rects(int n, double extent, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> c(0.25 * extent, 0.75 * extent), t(-std::numbers::pi / 2, std::numbers::pi / 2),
      w(0.1 * extent, 0.3 * extent);
  std::vector<GraspRectangle> out;
  for (int i = 0; i < n; ++i) {
    const double width = w(rng);
    out.push_back({{c(rng), c(rng)}, t(rng), width, width / 2});
  }
  return out;
}

void BM_RectIou(benchmark::State& state) {
  const auto rects = random_rects(256, 100, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rect_iou(rects[i % 256], rects[(i * 7 + 3) % 256]));
    ++i;
  }
}
BENCHMARK(BM_RectIou);

void BM_RenderTargetMaps(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const auto rects = random_rects(static_cast<int>(state.range(1)), size, 2);
  for (auto _ : state) benchmark::DoNotOptimize(render_target_maps(rects, size, size));
}
BENCHMARK(BM_RenderTargetMaps)->Args({64, 10})->Args({224, 40})->Unit(benchmark::kMicrosecond);

void BM_ExtractGrasps(benchmark::State& state) {
  const int size = static_cast<int>(state.range(0));
  const auto maps = render_target_maps(random_rects(10, size, 3), size, size);
  for (auto _ : state) benchmark::DoNotOptimize(extract_grasps(maps, 5));
}
BENCHMARK(BM_ExtractGrasps)->Arg(64)->Arg(224)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
