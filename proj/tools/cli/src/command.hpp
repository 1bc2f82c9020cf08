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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "graspforge/cli/cli.hpp"

namespace graspforge::cli {

/// Output directory of one run; every file a command writes goes through it.
class RunContext {
 public:
  explicit RunContext(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const { return dir_; }
  /// Absolute path for `relative`, recorded as an output.
  std::filesystem::path output(const std::string& relative);
  /// Like output(), for files with timings; excluded from the artifact hash.
  std::filesystem::path timing_output(const std::string& relative);
  void add_outputs_under(const std::string& relative_dir);
  const std::vector<std::string>& outputs() const { return outputs_; }
  const std::vector<std::string>& unhashed() const { return unhashed_; }

  nlohmann::json config;
  std::vector<std::uint64_t> seeds;

 private:
  std::filesystem::path dir_;
  std::vector<std::string> outputs_;
  std::vector<std::string> unhashed_;
};

/// Maps flags onto JSON pointers of a command's config document so that
/// defaults < config file < explicit flags.
class ConfigBinder {
 public:
  template <typename T>
  CLI::Option* option(CLI::App* app, const std::string& flag, const std::string& pointer, T& var,
                      const std::string& description) {
    auto* opt = app->add_option(flag, var, description);
    bindings_.push_back({pointer, opt, [&var] { return nlohmann::json(var); }});
    return opt;
  }

  CLI::Option* flag(CLI::App* app, const std::string& flag, const std::string& pointer, bool& var,
                    const std::string& description) {
    auto* opt = app->add_flag(flag, var, description);
    bindings_.push_back({pointer, opt, [&var] { return nlohmann::json(var); }});
    return opt;
  }

  nlohmann::json resolve(nlohmann::json defaults, const std::string& config_file) const;

 private:
  struct Binding {
    std::string pointer;
    CLI::Option* option;
    std::function<nlohmann::json()> value;
  };
  std::vector<Binding> bindings_;
};

/// Options shared by every command.
struct CommonOptions {
  std::string out;
  std::string config_file;
  std::string log_level = "info";
};

void add_common_options(CLI::App* app, CommonOptions& common);

using CommandBody = std::function<int(RunContext&)>;

/// Each registrar adds a subcommand and stores its body in `selected` when
/// the subcommand is parsed.
void register_synth(CLI::App& app, CommonOptions& common, CommandBody& selected);
void register_prepare(CLI::App& app, CommonOptions& common, CommandBody& selected);
void register_train(CLI::App& app, CommonOptions& common, CommandBody& selected);
void register_eval(CLI::App& app, CommonOptions& common, CommandBody& selected);
void register_infer(CLI::App& app, CommonOptions& common, CommandBody& selected);
void register_simulate(CLI::App& app, CommonOptions& common, CommandBody& selected);
void register_bench(CLI::App& app, CommonOptions& common, CommandBody& selected);

/// Raised for bad flag combinations detected after parsing (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string version_string();

}  // namespace graspforge::cli
