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

#include "graspforge/image.hpp"

namespace graspforge::io {

/// Reads any PNG as 8-bit RGB. Throws DataError on failure.
ImageU8 read_png_rgb(const std::filesystem::path& path);

/// Writes an 8-bit image with 1 (gray), 3 (RGB) or 4 (RGBA) channels.
void write_png(const std::filesystem::path& path, const ImageU8& image);

/// Reads a single-channel TIFF. Float samples are returned as-is; integer
/// samples are multiplied by `integer_scale`.
ImageF read_tiff_depth(const std::filesystem::path& path, double integer_scale = 1e-3);

/// Writes a single-channel float32 TIFF.
void write_tiff_depth(const std::filesystem::path& path, const ImageF& depth);

}  // namespace graspforge::io
