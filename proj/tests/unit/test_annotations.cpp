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

#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>
#include <unistd.h>

#include "graspforge/dataset/annotations.hpp"
#include "graspforge/dataset/synthetic.hpp"
#include "graspforge/errors.hpp"

namespace graspforge::dataset {
namespace {

namespace fs = std::filesystem;

TEST(Annotations, StreamRoundTrip) {
  const std::vector<Sample> samples{synth_scene(1, 64, 2), synth_scene(2, 64, 1)};
  std::stringstream ss;
  write_annotations(ss, samples);
  const auto back = read_annotations(ss, "mem");
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back[i].id, samples[i].id);
    EXPECT_EQ(back[i].object_id, samples[i].object_id);
    EXPECT_EQ(back[i].source, samples[i].source);
    ASSERT_EQ(back[i].rectangles.size(), samples[i].rectangles.size());
    for (std::size_t k = 0; k < back[i].rectangles.size(); ++k) {
      EXPECT_EQ(back[i].rectangles[k].center.x, samples[i].rectangles[k].center.x);
      EXPECT_EQ(back[i].rectangles[k].theta, samples[i].rectangles[k].theta);
      EXPECT_EQ(back[i].rectangles[k].width, samples[i].rectangles[k].width);
    }
  }
}

TEST(Annotations, MalformedLineNamesSourceAndLine) {
  std::stringstream ss("{\"id\":\"a\",\"rectangles\":[]}\nnot json\n");
  try {
    read_annotations(ss, "idx.jsonl");
    ADD_FAILURE() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("idx.jsonl:2"), std::string::npos) << e.what();
  }
}

TEST(Annotations, DirectoryRoundTripKeepsImages) {
  const fs::path dir = fs::temp_directory_path() / ("gf_annot_" + std::to_string(::getpid()));
  const std::vector<Sample> samples{synth_scene(3, 64, 2)};
  save_sample_directory(dir, samples);
  const auto back = load_sample_directory(dir);
  ASSERT_EQ(back.size(), 1u);
  ASSERT_TRUE(back[0].rgb && back[0].depth);
  EXPECT_EQ(*back[0].rgb, *samples[0].rgb);
  EXPECT_EQ(*back[0].depth, *samples[0].depth);
  fs::remove_all(dir);
  EXPECT_THROW(load_sample_directory(dir), DataError);
}

}  // namespace
}  // namespace graspforge::dataset
