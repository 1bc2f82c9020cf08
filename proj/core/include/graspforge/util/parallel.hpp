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

#pragma once

#include <cstddef>
#include <functional>

namespace graspforge::util {

/// Worker thread cap. Reads GRASP_FORGE_THREADS once; falls back to the
/// hardware concurrency. Always >= 1.
std::size_t max_threads();

/// Runs fn(i) for i in [begin, end). Iterations are split into contiguous
/// blocks, one per worker; each index is visited exactly once, so results that
/// only write to per-index slots are identical for any thread count.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& fn);

}  // namespace graspforge::util
