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

#include "graspforge/dataset/splits.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "graspforge/errors.hpp"

namespace graspforge::dataset {

std::string to_string(SplitMode mode) { return mode == SplitMode::kImageWise ? "iw" : "ow"; }

SplitMode split_mode_from_string(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "iw" || lower == "image-wise" || lower == "image") return SplitMode::kImageWise;
  if (lower == "ow" || lower == "object-wise" || lower == "object") return SplitMode::kObjectWise;
  throw InvalidArgument("unknown split mode '" + name + "' (expected iw or ow)");
}

void SplitSpec::validate() const {
  if (num_folds < 2) throw InvalidArgument("num_folds must be at least 2");
  if (fold < 0 || fold >= num_folds) throw InvalidArgument("fold must lie in [0, num_folds)");
}

void to_json(nlohmann::json& j, const SplitSpec& s) {
  j = {{"mode", to_string(s.mode)}, {"fold", s.fold}, {"num_folds", s.num_folds}, {"seed", s.seed}};
}

void from_json(const nlohmann::json& j, SplitSpec& s) {
  s.mode = split_mode_from_string(j.value("mode", std::string("iw")));
  s.fold = j.value("fold", 0);
  s.num_folds = j.value("num_folds", 5);
  s.seed = j.value("seed", std::uint64_t{0});
}

namespace {

// Fold of element i among n shuffled elements: contiguous, sizes differ by at most one.
int fold_of(std::size_t i, std::size_t n, int folds) {
  return static_cast<int>(i * static_cast<std::size_t>(folds) / n);
}

}  // namespace

Split make_splits(const std::vector<Sample>& samples, const SplitSpec& spec) {
  spec.validate();
  if (samples.empty()) throw DataError("cannot split an empty dataset");
  std::set<std::string> seen;
  for (const auto& s : samples) {
    if (!seen.insert(s.id).second) throw DataError("duplicate sample id " + s.id);
  }
  std::mt19937_64 rng(spec.seed);
  Split split;

  if (spec.mode == SplitMode::kImageWise) {
    std::vector<std::size_t> order(samples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 0; i < order.size(); ++i) {
      auto& side = fold_of(i, order.size(), spec.num_folds) == spec.fold ? split.val_ids : split.train_ids;
      side.push_back(samples[order[i]].id);
    }
    return split;
  }

  std::vector<std::string> objects;
  for (const auto& s : samples) {
    if (s.object_id.empty()) throw DataError("object-wise split needs object ids; sample " + s.id + " has none");
    objects.push_back(s.object_id);
  }
  std::sort(objects.begin(), objects.end());
  objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
  std::shuffle(objects.begin(), objects.end(), rng);
  std::map<std::string, int> fold;
  for (std::size_t i = 0; i < objects.size(); ++i) fold[objects[i]] = fold_of(i, objects.size(), spec.num_folds);
  for (const auto& s : samples) {
    (fold[s.object_id] == spec.fold ? split.val_ids : split.train_ids).push_back(s.id);
  }
  return split;
}

}  // namespace graspforge::dataset
