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
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace graspforge::io {

inline constexpr char kBlobMagic[4] = {'G', 'R', 'C', 'N'};
inline constexpr std::uint32_t kBlobFormatVersion = 1;

struct Blob {
  std::string name;
  std::vector<float> values;
};

/// Container shared by checkpoints and tensor caches:
///
///   "GRCN" | u32 version | u32 header length | header (canonical JSON)
///   | u32 blob count | per blob: u32 name length | name | u64 value count
///   | value count x f32 | u32 CRC32 over name and value bytes
///
/// All integers and floats are little-endian.
struct BlobFile {
  nlohmann::json header = nlohmann::json::object();
  std::vector<Blob> blobs;

  const Blob* find(const std::string& name) const;
};

void write_blob_file(const std::filesystem::path& path, const BlobFile& file);

/// Throws CheckpointError on truncation, bad magic or checksum mismatch, and
/// VersionMismatchError on an unknown format version.
BlobFile read_blob_file(const std::filesystem::path& path);

}  // namespace graspforge::io
