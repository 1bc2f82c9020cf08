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
#include <fstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>
#include <unistd.h>

#include "graspforge/cli/cli.hpp"

namespace graspforge::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("gf_cli_" + std::to_string(::getpid()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  std::string dir(const std::string& name) const { return (root_ / name).string(); }

  static nlohmann::json read_json(const fs::path& p) {
    std::ifstream in(p);
    return nlohmann::json::parse(in);
  }

  fs::path root_;
};

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run(std::vector<std::string>{}), kExitUsage);
  EXPECT_EQ(run({"no-such-command"}), kExitUsage);
  EXPECT_EQ(run({"synth", "--count", "abc", "--out", dir("a")}), kExitUsage);
  EXPECT_EQ(run({"train", "--dataset", "cornell", "--out", dir("b")}), kExitUsage);
}

TEST_F(CliTest, MissingDataExitsThree) {
  EXPECT_EQ(run({"eval", "--checkpoint", dir("missing.grcn"), "--out", dir("c")}), kExitData);
  EXPECT_EQ(run({"train", "--dataset", "cornell", "--path", dir("nowhere"), "--out", dir("d")}), kExitData);
}

TEST_F(CliTest, SynthWritesManifestAndIsReproducible) {
  const std::vector<std::string> base{"synth", "--count", "3", "--seed", "5", "--size", "32"};
  auto a = base, b = base;
  a.insert(a.end(), {"--out", dir("s1")});
  b.insert(b.end(), {"--out", dir("s2")});
  ASSERT_EQ(run(a), kExitOk);
  ASSERT_EQ(run(b), kExitOk);
  const auto m1 = read_json(root_ / "s1" / "manifest.json");
  const auto m2 = read_json(root_ / "s2" / "manifest.json");
  EXPECT_EQ(m1["command"], "synth");
  EXPECT_EQ(m1["exit_code"], 0);
  EXPECT_EQ(m1["seeds"], nlohmann::json::array({5}));
  EXPECT_EQ(m1["config"]["count"], 3);
  EXPECT_FALSE(m1["artifact_hash"].get<std::string>().empty());
  EXPECT_EQ(m1["artifact_hash"], m2["artifact_hash"]);
  EXPECT_TRUE(fs::exists(root_ / "s1" / "samples" / "annotations.jsonl"));
  auto outputs = m1["outputs"].get<std::vector<std::string>>();
  EXPECT_TRUE(std::is_sorted(outputs.begin(), outputs.end()));
}

TEST_F(CliTest, ArtifactHashTracksContent) {
  std::ofstream(root_ / "x.txt") << "hello";
  const auto h1 = artifact_hash(root_, {"x.txt"});
  std::ofstream(root_ / "x.txt") << "hello!";
  EXPECT_NE(artifact_hash(root_, {"x.txt"}), h1);
  EXPECT_EQ(h1.size(), 64u);
}

TEST_F(CliTest, BenchReportsOrderedStatistics) {
  ASSERT_EQ(run({"bench", "--base-width", "4", "--input-size", "32", "--residual-blocks", "1", "--n", "5",
                 "--warmup", "1", "--out", dir("bench")}),
            kExitOk);
  const auto j = read_json(root_ / "bench" / "bench.json");
  EXPECT_EQ(j["timings_ms"].size(), 5u);
  EXPECT_GE(j["p95_ms"].get<double>(), j["median_ms"].get<double>());
  EXPECT_GE(j["max_ms"].get<double>(), j["p95_ms"].get<double>());
  EXPECT_LE(j["min_ms"].get<double>(), j["median_ms"].get<double>());
}

TEST_F(CliTest, TrainThenSimulate) {
  ASSERT_EQ(run({"train", "--preset", "desk", "--input-size", "32", "--base-width", "4", "--residual-blocks", "1",
                 "--train-count", "4", "--val-count", "2", "--epochs", "1", "--seed", "1", "--out", dir("t")}),
            kExitOk);
  const auto ck = (root_ / "t" / "seed_1" / "best.grcn").string();
  ASSERT_TRUE(fs::exists(ck));
  ASSERT_EQ(run({"simulate", "--checkpoint", ck, "--objects", "2", "--trials", "2", "--max-attempts", "3", "--seed",
                 "4", "--out", dir("sim")}),
            kExitOk);
  const auto summary = read_json(root_ / "sim" / "summary.json");
  EXPECT_LE(summary["attempts"].get<int>(), 6);
  EXPECT_LE(summary["successes"].get<int>(), summary["attempts"].get<int>());
  EXPECT_TRUE(fs::exists(root_ / "sim" / "trial_0.json"));
  EXPECT_EQ(run({"infer", "--checkpoint", ck, "--image", dir("nope.png"), "--out", dir("inf")}), kExitData);
}

}  // namespace
}  // namespace graspforge::cli
