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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>
#include <unistd.h>

#include "graspforge/dataset/loaders.hpp"
#include "graspforge/dataset/preprocess.hpp"
#include "graspforge/errors.hpp"
#include "graspforge/geometry/maps.hpp"

namespace graspforge::dataset {
namespace {

namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

const fs::path kFixtures = GRASP_FORGE_FIXTURES;

TEST(LoadCornell, ReadsMiniatureTree) {
  const auto samples = load_cornell(kFixtures / "cornell_mini");
  ASSERT_EQ(samples.size(), 3u);
  EXPECT_EQ(samples[0].id, "pcd0100");
  EXPECT_EQ(samples[1].id, "pcd0101");
  EXPECT_EQ(samples[2].id, "pcd0102");
  EXPECT_EQ(samples[0].object_id, "7");
  EXPECT_EQ(samples[1].object_id, "7");
  EXPECT_EQ(samples[2].object_id, "12");
  std::size_t total = 0;
  for (const auto& s : samples) {
    EXPECT_EQ(s.source, Source::kCornell);
    EXPECT_EQ(s.negative_count, 1);
    ASSERT_TRUE(s.rgb && s.depth);
    EXPECT_EQ(s.width(), 160);
    EXPECT_EQ(s.height(), 120);
    total += s.rectangles.size();
  }
  EXPECT_EQ(samples[0].rectangles.size(), 3u);
  EXPECT_EQ(samples[1].rectangles.size(), 4u);
  EXPECT_EQ(samples[2].rectangles.size(), 3u);
  EXPECT_EQ(total, 10u);
}

TEST(LoadCornell, BarGraspsCloseAcrossTheBar) {
  const auto samples = load_cornell(kFixtures / "cornell_mini");
  // Bar 0 is horizontal, thickness 12: rectangles 22 x 11 with vertical closing.
  for (const auto& r : samples[0].rectangles) {
    EXPECT_NEAR(r.width, 22.0, 0.05);
    EXPECT_NEAR(r.height, 11.0, 0.05);
    EXPECT_LT(geometry::angle_difference(r.theta, kPi / 2), 1e-3);
  }
}

TEST(LoadCornell, PcdDepthInMetresWithHole) {
  const auto samples = load_cornell(kFixtures / "cornell_mini");
  const auto& d = *samples[0].depth;
  EXPECT_EQ(d.at(20, 10), 0.0f);
  EXPECT_EQ(d.at(29, 15), 0.0f);
  EXPECT_GT(d.at(30, 15), 0.0f);
  EXPECT_GT(d.at(25, 16), 0.0f);
  EXPECT_NEAR(d.at(5, 5), 0.62f, 1e-4);
  EXPECT_NEAR(d.at(80, 60), 0.58f, 1e-4);
  // The TIFF-backed sample has no holes.
  for (float v : samples[1].depth->pixels) ASSERT_GT(v, 0.5f);
}

TEST(LoadCornell, MissingDirectoryAndEmptyTree) {
  EXPECT_THROW(load_cornell(kFixtures / "does_not_exist"), DataError);
  const fs::path empty = fs::temp_directory_path() / ("gf_empty_" + std::to_string(::getpid()));
  fs::create_directories(empty);
  EXPECT_THROW(load_cornell(empty), DataError);
  EXPECT_THROW(load_jacquard(empty), DataError);
  fs::remove_all(empty);
}

TEST(LoadCornell, MissingImageNamesTheSample) {
  const fs::path dir = fs::temp_directory_path() / ("gf_cornell_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  fs::copy_file(kFixtures / "cornell_mini" / "01" / "pcd0100cpos.txt", dir / "pcd0100cpos.txt",
                fs::copy_options::overwrite_existing);
  try {
    load_cornell(dir);
    ADD_FAILURE() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("pcd0100"), std::string::npos) << e.what();
  }
  fs::remove_all(dir);
}

TEST(ParseCornellRectangles, MalformedLineReportsLineNumber) {
  std::istringstream in("1 2\n3 4\nfive 6\n7 8\n");
  try {
    parse_cornell_rectangles(in, "pos.txt");
    ADD_FAILURE() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("pos.txt:3"), std::string::npos) << e.what();
  }
}

TEST(ParseCornellRectangles, IncompleteGroupRejected) {
  std::istringstream in("0 0\n10 0\n10 5\n0 5\n1 1\n");
  EXPECT_THROW(parse_cornell_rectangles(in, "pos.txt"), DataError);
}

TEST(ParseCornellRectangles, NanRectangleDropped) {
  std::istringstream in("0 0\n10 0\n10 5\n0 5\nNaN NaN\n10 0\n10 5\n0 5\n");
  int dropped = -1;
  const auto rects = parse_cornell_rectangles(in, "pos.txt", &dropped);
  ASSERT_EQ(rects.size(), 1u);
  EXPECT_EQ(dropped, 1);
  EXPECT_NEAR(rects[0].width, 10.0, 1e-12);
  EXPECT_NEAR(rects[0].height, 5.0, 1e-12);
  EXPECT_NEAR(rects[0].center.x, 5.0, 1e-12);
  EXPECT_NEAR(rects[0].center.y, 2.5, 1e-12);
}

TEST(LoadJacquard, ReadsMiniatureScene) {
  const auto samples = load_jacquard(kFixtures / "jacquard_mini");
  ASSERT_EQ(samples.size(), 1u);
  const auto& s = samples[0];
  EXPECT_EQ(s.id, "0_1a9e");
  EXPECT_EQ(s.object_id, "1a9e");
  EXPECT_EQ(s.source, Source::kJacquard);
  EXPECT_EQ(s.width(), 128);
  EXPECT_EQ(s.height(), 120);
  ASSERT_EQ(s.rectangles.size(), 3u);
  EXPECT_EQ(s.rectangles[0].theta, 0.0);
  EXPECT_NEAR(s.rectangles[2].theta, kPi / 2, 1e-12);
  EXPECT_EQ(s.rectangles[2].width, 22.0);
  EXPECT_EQ(s.rectangles[2].height, 11.0);
}

TEST(ParseJacquardGrasps, AngleNormalisedAndErrors) {
  std::istringstream ok("10;20;-90;8;4\n10;20;135;8;4\n10;20;nan;8;4\n");
  const auto rects = parse_jacquard_grasps(ok, "g.txt");
  ASSERT_EQ(rects.size(), 2u);
  EXPECT_NEAR(rects[0].theta, kPi / 2, 1e-12);
  EXPECT_NEAR(rects[1].theta, -kPi / 4, 1e-12);
  std::istringstream bad("10;20;0;8\n");
  EXPECT_THROW(parse_jacquard_grasps(bad, "g.txt"), DataError);
  std::istringstream zero("10;20;0;0;4\n");
  EXPECT_THROW(parse_jacquard_grasps(zero, "g.txt"), DataError);
}

TEST(DepthFromPcd, RequiresDataLine) {
  std::istringstream in("FIELDS x y z rgb index\n0 0 600 0 3\n");
  EXPECT_THROW(depth_from_pcd(in, 4, 4, "p.txt"), DataError);
  std::istringstream good("FIELDS x y z rgb index\nDATA ascii\n0 0 600 0 3\n0 0 700 0 99\n");
  const auto d = depth_from_pcd(good, 4, 4, "p.txt");
  EXPECT_FLOAT_EQ(d.at(3, 0), 0.6f);
  EXPECT_EQ(d.at(0, 0), 0.0f);
}

TEST(LabelConsistency, FixturesSurviveRenderAndExtract) {
  auto samples = load_cornell(kFixtures / "cornell_mini");
  for (auto& s : load_jacquard(kFixtures / "jacquard_mini")) samples.push_back(std::move(s));
  int matched = 0, total = 0;
  for (const auto& raw : samples) {
    const auto s = crop_resize(raw, 96);
    ASSERT_FALSE(s.rectangles.empty()) << s.id;
    const auto maps = geometry::render_target_maps(s.rectangles, 96, 96, 150.0);
    const auto grasps = geometry::extract_grasps(maps, static_cast<int>(s.rectangles.size()), 150.0);
    for (const auto& g : grasps) {
      ++total;
      matched += geometry::metric_match(geometry::to_rectangle(g), s.rectangles);
    }
  }
  ASSERT_GT(total, 0);
  EXPECT_GE(static_cast<double>(matched) / total, 0.95) << matched << "/" << total;
}

}  // namespace
}  // namespace graspforge::dataset
