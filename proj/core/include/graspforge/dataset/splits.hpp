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

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graspforge/dataset/sample.hpp"

namespace graspforge::dataset {

enum class SplitMode { kImageWise, kObjectWise };

std::string to_string(SplitMode mode);
SplitMode split_mode_from_string(const std::string& name);

struct SplitSpec {
  SplitMode mode = SplitMode::kImageWise;
  int fold = 0;
  int num_folds = 5;
  std::uint64_t seed = 0;

  void validate() const;
  bool operator==(const SplitSpec&) const = default;
};

void to_json(nlohmann::json& j, const SplitSpec& s);
void from_json(const nlohmann::json& j, SplitSpec& s);

struct Split {
  std::vector<std::string> train_ids;
  std::vector<std::string> val_ids;
};

/// Seeded k-fold partition; `fold` selects the validation part. Object-wise
/// splits shuffle and partition distinct object ids, so no object appears on
/// both sides.
Split make_splits(const std::vector<Sample>& samples, const SplitSpec& spec);

}  // namespace graspforge::dataset
