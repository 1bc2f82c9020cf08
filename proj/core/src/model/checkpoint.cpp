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

#include "graspforge/model/checkpoint.hpp"

#include <algorithm>

#include "graspforge/errors.hpp"
#include "graspforge/io/blob_file.hpp"

namespace graspforge::model {

void to_json(nlohmann::json& j, const TrainingMetadata& m) {
  j = nlohmann::json{{"seed", m.seed},
                     {"epoch", m.epoch},
                     {"optimizer_step", m.optimizer_step},
                     {"modality", m.modality},
                     {"w_max", m.w_max},
                     {"validation_accuracy", m.validation_accuracy}};
}

void from_json(const nlohmann::json& j, TrainingMetadata& m) {
  TrainingMetadata d;
  m.seed = j.value("seed", d.seed);
  m.epoch = j.value("epoch", d.epoch);
  m.optimizer_step = j.value("optimizer_step", d.optimizer_step);
  m.modality = j.value("modality", d.modality);
  m.w_max = j.value("w_max", d.w_max);
  m.validation_accuracy = j.value("validation_accuracy", d.validation_accuracy);
}

void save_checkpoint(GrConvNet& model, const TrainingMetadata& meta, const std::filesystem::path& path) {
  io::BlobFile file;
  file.header = {{"kind", "checkpoint"}, {"config", model.config()}, {"meta", meta}};
  for (const auto* p : model.parameters()) {
    const auto v = p->tensor.data();
    file.blobs.push_back({p->name, std::vector<float>(v.begin(), v.end())});
  }
  for (const auto& s : model.running_stats()) {
    file.blobs.push_back({s.name + ".running_mean", s.stats->mean});
    file.blobs.push_back({s.name + ".running_var", s.stats->var});
  }
  io::write_blob_file(path, file);
}

namespace {

void restore(const io::BlobFile& file, const std::string& name, std::span<float> dst) {
  const io::Blob* blob = file.find(name);
  if (blob == nullptr) throw CheckpointError("checkpoint is missing blob '" + name + "'");
  if (blob->values.size() != dst.size()) {
    throw CheckpointError("blob '" + name + "' has " + std::to_string(blob->values.size()) +
                          " values, model expects " + std::to_string(dst.size()));
  }
  std::copy(blob->values.begin(), blob->values.end(), dst.begin());
}

}  // namespace

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  const io::BlobFile file = io::read_blob_file(path);
  if (file.header.value("kind", "") != "checkpoint" || !file.header.contains("config")) {
    throw CheckpointError(path.string() + " is not a model checkpoint");
  }
  ModelConfig config;
  TrainingMetadata meta;
  try {
    config = file.header.at("config").get<ModelConfig>();
    if (file.header.contains("meta")) meta = file.header.at("meta").get<TrainingMetadata>();
    config.validate();
  } catch (const nlohmann::json::exception& e) {
    throw CheckpointError(path.string() + ": invalid config: " + e.what());
  } catch (const InvalidArgument& e) {
    throw CheckpointError(path.string() + ": invalid config: " + e.what());
  }
  Checkpoint ckpt{GrConvNet(config), meta};
  for (auto* p : ckpt.model.parameters()) restore(file, p->name, p->tensor.data());
  for (auto& s : ckpt.model.running_stats()) {
    restore(file, s.name + ".running_mean", s.stats->mean);
    restore(file, s.name + ".running_var", s.stats->var);
  }
  return ckpt;
}

}  // namespace graspforge::model
