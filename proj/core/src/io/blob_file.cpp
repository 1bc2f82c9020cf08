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

#include "graspforge/io/blob_file.hpp"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "graspforge/errors.hpp"

namespace graspforge::io {

namespace {

static_assert(std::endian::native == std::endian::little, "blob files assume a little-endian host");
static_assert(sizeof(float) == 4);

class Writer {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const char*>(data);
    buffer_.insert(buffer_.end(), p, p + n);
  }
  void u32(std::uint32_t v) { bytes(&v, sizeof v); }
  void u64(std::uint64_t v) { bytes(&v, sizeof v); }
  const std::vector<char>& buffer() const { return buffer_; }

 private:
  std::vector<char> buffer_;
};

class Reader {
 public:
  explicit Reader(std::vector<char> data) : data_(std::move(data)) {}

  const char* take(std::size_t n, const char* what) {
    if (n > data_.size() - pos_) throw CheckpointError(std::string("truncated blob file while reading ") + what);
    const char* p = data_.data() + pos_;
    pos_ += n;
    return p;
  }
  std::uint32_t u32(const char* what) {
    std::uint32_t v;
    std::memcpy(&v, take(sizeof v, what), sizeof v);
    return v;
  }
  std::uint64_t u64(const char* what) {
    std::uint64_t v;
    std::memcpy(&v, take(sizeof v, what), sizeof v);
    return v;
  }
  bool at_end() const { return pos_ == data_.size(); }

 private:
  std::vector<char> data_;
  std::size_t pos_ = 0;
};

std::uint32_t checksum(const std::string& name, const float* values, std::size_t count) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(name.data()), static_cast<uInt>(name.size()));
  const auto* bytes = reinterpret_cast<const Bytef*>(values);
  std::size_t remaining = count * sizeof(float);
  while (remaining > 0) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(remaining, 1u << 30));
    crc = crc32(crc, bytes, chunk);
    bytes += chunk;
    remaining -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

const Blob* BlobFile::find(const std::string& name) const {
  for (const auto& b : blobs) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

void write_blob_file(const std::filesystem::path& path, const BlobFile& file) {
  Writer w;
  w.bytes(kBlobMagic, sizeof kBlobMagic);
  w.u32(kBlobFormatVersion);
  const std::string header = file.header.dump();
  w.u32(static_cast<std::uint32_t>(header.size()));
  w.bytes(header.data(), header.size());
  w.u32(static_cast<std::uint32_t>(file.blobs.size()));
  for (const auto& blob : file.blobs) {
    w.u32(static_cast<std::uint32_t>(blob.name.size()));
    w.bytes(blob.name.data(), blob.name.size());
    w.u64(blob.values.size());
    w.bytes(blob.values.data(), blob.values.size() * sizeof(float));
    w.u32(checksum(blob.name, blob.values.data(), blob.values.size()));
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CheckpointError("cannot open " + path.string() + " for writing");
  out.write(w.buffer().data(), static_cast<std::streamsize>(w.buffer().size()));
  if (!out) throw CheckpointError("failed writing " + path.string());
}

BlobFile read_blob_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open " + path.string());
  Reader r(std::vector<char>(std::istreambuf_iterator<char>(in), {}));

  if (std::memcmp(r.take(4, "magic"), kBlobMagic, 4) != 0) {
    throw CheckpointError(path.string() + " is not a GRCN blob file");
  }
  const std::uint32_t version = r.u32("version");
  if (version != kBlobFormatVersion) {
    throw VersionMismatchError(path.string() + " has format version " + std::to_string(version) +
                               ", expected " + std::to_string(kBlobFormatVersion));
  }
  BlobFile file;
  const std::uint32_t header_len = r.u32("header length");
  const char* header = r.take(header_len, "header");
  try {
    file.header = nlohmann::json::parse(header, header + header_len);
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(path.string() + ": malformed header: " + e.what());
  }
  const std::uint32_t count = r.u32("blob count");
  for (std::uint32_t i = 0; i < count; ++i) {
    Blob blob;
    const std::uint32_t name_len = r.u32("blob name length");
    const char* name = r.take(name_len, "blob name");
    blob.name.assign(name, name_len);
    const std::uint64_t n = r.u64("blob size");
    if (n > (std::uint64_t{1} << 40)) throw CheckpointError("implausible blob size for " + blob.name);
    const char* values = r.take(static_cast<std::size_t>(n) * sizeof(float), "blob values");
    blob.values.resize(static_cast<std::size_t>(n));
    std::memcpy(blob.values.data(), values, blob.values.size() * sizeof(float));
    if (r.u32("blob checksum") != checksum(blob.name, blob.values.data(), blob.values.size())) {
      throw CheckpointError("checksum mismatch in blob '" + blob.name + "' of " + path.string());
    }
    file.blobs.push_back(std::move(blob));
  }
  if (!r.at_end()) throw CheckpointError(path.string() + " has trailing bytes after the last blob");
  return file;
}

}  // namespace graspforge::io
