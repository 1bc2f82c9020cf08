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
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graspforge/dataset/sample.hpp"

namespace graspforge::dataset {

/// Canonical annotation line:
/// {"id", "source", "object_id", "rectangles": [{"cx","cy","theta","width","height"}]}
nlohmann::json annotation_record(const Sample& sample);

/// Applies a record to a sample (id, source, object id and rectangles).
void apply_annotation(const nlohmann::json& record, Sample& sample);

void write_annotations(std::ostream& out, const std::vector<Sample>& samples);
/// One sample per non-empty line, without images. Throws DataError naming
/// the line on malformed input.
std::vector<Sample> read_annotations(std::istream& in, const std::string& source_name);

/// Writes `<id>_rgb.png`, `<id>_depth.tiff` and `annotations.jsonl`.
void save_sample_directory(const std::filesystem::path& dir, const std::vector<Sample>& samples);

/// Reads a directory written by save_sample_directory.
std::vector<Sample> load_sample_directory(const std::filesystem::path& dir);

}  // namespace graspforge::dataset
