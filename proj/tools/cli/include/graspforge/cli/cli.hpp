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

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace graspforge::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitData = 3,
  kExitConfigMismatch = 4,
  kExitInternal = 5,
};

/// Runs one command. `args` excludes the program name. Errors are reported on
/// stderr and mapped to an ExitCode.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

/// Record of one invocation, written as manifest.json in the run directory.
struct RunManifest {
  std::string command;
  std::vector<std::string> args;
  nlohmann::json config;
  std::vector<std::uint64_t> seeds;
  std::string artifact_hash;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> outputs;  // relative to the run directory
  // Outputs left out of artifact_hash because they hold wall-clock data.
  std::vector<std::string> unhashed;
  int exit_code = 0;
  std::string version;
};

void to_json(nlohmann::json& j, const RunManifest& m);
void from_json(const nlohmann::json& j, RunManifest& m);

/// Git-style content hash of the listed files: SHA-256 over sorted
/// "<path>\0<sha256(content)>\n" records.
std::string artifact_hash(const std::filesystem::path& root, const std::vector<std::string>& files);

}  // namespace graspforge::cli
