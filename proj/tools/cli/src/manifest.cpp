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
#include <array>
#include <fstream>
#include <iterator>

#include <openssl/evp.h>

#include "graspforge/cli/cli.hpp"
#include "graspforge/errors.hpp"

namespace graspforge::cli {

namespace {

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 15]);
  }
  return hex;
}

}  // namespace

void to_json(nlohmann::json& j, const RunManifest& m) {
  j = {{"command", m.command},         {"args", m.args},
       {"config", m.config},           {"seeds", m.seeds},
       {"artifact_hash", m.artifact_hash}, {"started_at", m.started_at},
       {"finished_at", m.finished_at}, {"outputs", m.outputs},
       {"unhashed_outputs", m.unhashed},
       {"exit_code", m.exit_code},     {"version", m.version}};
}

void from_json(const nlohmann::json& j, RunManifest& m) {
  m.command = j.at("command").get<std::string>();
  m.args = j.at("args").get<std::vector<std::string>>();
  m.config = j.value("config", nlohmann::json::object());
  m.seeds = j.value("seeds", std::vector<std::uint64_t>{});
  m.artifact_hash = j.value("artifact_hash", std::string());
  m.started_at = j.value("started_at", std::string());
  m.finished_at = j.value("finished_at", std::string());
  m.outputs = j.value("outputs", std::vector<std::string>{});
  m.unhashed = j.value("unhashed_outputs", std::vector<std::string>{});
  m.exit_code = j.value("exit_code", 0);
  m.version = j.value("version", std::string());
}

std::string artifact_hash(const std::filesystem::path& root, const std::vector<std::string>& files) {
  std::vector<std::string> sorted(files);
  std::sort(sorted.begin(), sorted.end());
  std::string records;
  for (const auto& f : sorted) {
    std::ifstream in(root / f, std::ios::binary);
    if (!in) continue;
    const std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    records += f;
    records.push_back('\0');
    records += sha256_hex(content);
    records.push_back('\n');
  }
  return sha256_hex(records);
}

}  // namespace graspforge::cli
