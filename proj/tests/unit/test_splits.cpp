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
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "graspforge/dataset/splits.hpp"
#include "graspforge/errors.hpp"

namespace graspforge::dataset {
namespace {

std::vector<Sample> make_samples(int n, int objects) {
  std::vector<Sample> out;
  for (int i = 0; i < n; ++i) {
    Sample s;
    s.id = "s" + std::to_string(i);
    s.object_id = "o" + std::to_string(i % objects);
    out.push_back(s);
  }
  return out;
}

TEST(Splits, ImageWiseFoldsPartitionTheSet) {
  const auto samples = make_samples(10, 10);
  std::multiset<std::string> all_val;
  for (int fold = 0; fold < 5; ++fold) {
    const auto split = make_splits(samples, {SplitMode::kImageWise, fold, 5, 42});
    EXPECT_EQ(split.val_ids.size(), 2u);
    EXPECT_EQ(split.train_ids.size(), 8u);
    std::set<std::string> train(split.train_ids.begin(), split.train_ids.end());
    for (const auto& id : split.val_ids) {
      EXPECT_EQ(train.count(id), 0u);
      all_val.insert(id);
    }
  }
  EXPECT_EQ(all_val.size(), 10u);
  EXPECT_EQ(std::set<std::string>(all_val.begin(), all_val.end()).size(), 10u);
}

TEST(Splits, ObjectWiseNeverSplitsAnObject) {
  const auto samples = make_samples(30, 7);
  std::map<std::string, std::string> object_of;
  for (const auto& s : samples) object_of[s.id] = s.object_id;
  std::set<std::string> seen_val_objects;
  for (int fold = 0; fold < 5; ++fold) {
    const auto split = make_splits(samples, {SplitMode::kObjectWise, fold, 5, 3});
    std::set<std::string> train_objects, val_objects;
    for (const auto& id : split.train_ids) train_objects.insert(object_of[id]);
    for (const auto& id : split.val_ids) val_objects.insert(object_of[id]);
    for (const auto& o : val_objects) {
      EXPECT_EQ(train_objects.count(o), 0u) << o;
      EXPECT_TRUE(seen_val_objects.insert(o).second) << o;
    }
    EXPECT_EQ(split.train_ids.size() + split.val_ids.size(), 30u);
  }
  EXPECT_EQ(seen_val_objects.size(), 7u);
}

TEST(Splits, DeterministicForSeed) {
  const auto samples = make_samples(25, 5);
  const SplitSpec spec{SplitMode::kImageWise, 2, 5, 9};
  EXPECT_EQ(make_splits(samples, spec).val_ids, make_splits(samples, spec).val_ids);
  SplitSpec other = spec;
  other.seed = 10;
  auto a = make_splits(samples, spec).val_ids, b = make_splits(samples, other).val_ids;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_NE(a, b);
}

TEST(Splits, InvalidInputsRejected) {
  const auto samples = make_samples(4, 2);
  EXPECT_THROW(make_splits(samples, {SplitMode::kImageWise, 5, 5, 0}), InvalidArgument);
  EXPECT_THROW(make_splits(samples, {SplitMode::kImageWise, 0, 1, 0}), InvalidArgument);
  EXPECT_THROW(make_splits({}, {}), DataError);
  auto dup = samples;
  dup[1].id = dup[0].id;
  EXPECT_THROW(make_splits(dup, {}), DataError);
  auto no_obj = samples;
  no_obj[2].object_id.clear();
  EXPECT_THROW(make_splits(no_obj, {SplitMode::kObjectWise, 0, 2, 0}), DataError);
  EXPECT_THROW(split_mode_from_string("random"), InvalidArgument);
}

TEST(Splits, JsonRoundTrip) {
  const SplitSpec spec{SplitMode::kObjectWise, 3, 5, 77};
  nlohmann::json j = spec;
  EXPECT_EQ(j["mode"], "ow");
  EXPECT_EQ(j.get<SplitSpec>(), spec);
}

}  // namespace
}  // namespace graspforge::dataset
