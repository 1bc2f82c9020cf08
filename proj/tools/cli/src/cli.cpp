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
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>

#include <spdlog/sinks/basic_file_sink.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "command.hpp"
#include "graspforge/errors.hpp"

namespace graspforge::cli {

namespace fs = std::filesystem;

std::string version_string() { return GRASP_FORGE_VERSION_STRING; }

fs::path RunContext::output(const std::string& relative) {
  const fs::path path = dir_ / relative;
  fs::create_directories(path.parent_path());
  if (std::find(outputs_.begin(), outputs_.end(), relative) == outputs_.end()) outputs_.push_back(relative);
  return path;
}

fs::path RunContext::timing_output(const std::string& relative) {
  unhashed_.push_back(relative);
  return output(relative);
}

void RunContext::add_outputs_under(const std::string& relative_dir) {
  for (const auto& entry : fs::recursive_directory_iterator(dir_ / relative_dir)) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), dir_).generic_string();
    if (std::find(outputs_.begin(), outputs_.end(), rel) == outputs_.end()) outputs_.push_back(rel);
  }
}

nlohmann::json ConfigBinder::resolve(nlohmann::json defaults, const std::string& config_file) const {
  if (!config_file.empty()) {
    std::ifstream in(config_file);
    if (!in) throw UsageError("--config: cannot open " + config_file);
    try {
      defaults.merge_patch(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("--config: " + config_file + " is not valid JSON: " + e.what());
    }
  }
  for (const auto& b : bindings_) {
    if (b.option->count() > 0) defaults[nlohmann::json::json_pointer(b.pointer)] = b.value();
  }
  return defaults;
}

void add_common_options(CLI::App* app, CommonOptions& common) {
  app->add_option("--out", common.out, "Run directory (default: runs/<command>-<timestamp>)");
  app->add_option("--config", common.config_file, "Canonical JSON config; flags override its values");
  app->add_option("--log-level", common.log_level, "trace|debug|info|warn|error")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error"}));
}

namespace {

std::string timestamp(const char* format) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[64];
  std::strftime(buf, sizeof buf, format, &tm);
  return buf;
}

int report(int code, const std::string& kind, const std::string& message) {
  spdlog::error("{}: {}", kind, message);
  return code;
}

int replay(const std::vector<std::string>& args) {
  CLI::App app{"Re-run a command from its manifest", "grasp_forge replay"};
  std::string manifest_path, out;
  app.add_option("--manifest", manifest_path, "manifest.json of the run to repeat")->required();
  app.add_option("--out", out, "Run directory for the repeat")->required();
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }
  std::ifstream in(manifest_path);
  if (!in) {
    std::cerr << "--manifest: cannot open " << manifest_path << '\n';
    return kExitData;
  }
  RunManifest m;
  try {
    m = nlohmann::json::parse(in).get<RunManifest>();
  } catch (const std::exception& e) {
    std::cerr << "--manifest: malformed manifest: " << e.what() << '\n';
    return kExitData;
  }
  std::vector<std::string> repeat{m.command};
  for (std::size_t i = 0; i < m.args.size(); ++i) {
    if (m.args[i] == "--out" && i + 1 < m.args.size()) {
      ++i;
      continue;
    }
    if (m.args[i].rfind("--out=", 0) == 0) continue;
    repeat.push_back(m.args[i]);
  }
  repeat.push_back("--out");
  repeat.push_back(out);
  return run(repeat);
}

}  // namespace

int run(const std::vector<std::string>& args) {
  if (!args.empty() && args.front() == "replay") return replay({args.begin() + 1, args.end()});

  CLI::App app{"grasp_forge: generative residual grasp detection toolkit", "grasp_forge"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);
  CommonOptions common;
  CommandBody body;
  register_synth(app, common, body);
  register_prepare(app, common, body);
  register_train(app, common, body);
  register_eval(app, common, body);
  register_infer(app, common, body);
  register_simulate(app, common, body);
  register_bench(app, common, body);
  app.add_subcommand("replay", "Re-run a command from its manifest (--manifest FILE --out DIR)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  spdlog::set_level(spdlog::level::from_str(common.log_level));
  const fs::path dir = common.out.empty() ? fs::path("runs") / (command + "-" + timestamp("%Y%m%d-%H%M%S"))
                                          : fs::path(common.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    std::cerr << "--out: cannot create " << dir << ": " << ec.message() << '\n';
    return kExitUsage;
  }

  RunContext ctx(dir);
  RunManifest manifest;
  manifest.command = command;
  manifest.args.assign(args.begin() + 1, args.end());
  manifest.started_at = timestamp("%Y-%m-%dT%H:%M:%SZ");
  manifest.version = version_string();

  auto previous = spdlog::default_logger();
  auto console = std::make_shared<spdlog::sinks::stderr_color_sink_mt>();
  auto file = std::make_shared<spdlog::sinks::basic_file_sink_mt>((dir / "run.log").string(), true);
  auto logger = std::make_shared<spdlog::logger>("grasp_forge", spdlog::sinks_init_list{console, file});
  logger->set_level(spdlog::level::from_str(common.log_level));
  spdlog::set_default_logger(logger);

  int code = kExitOk;
  try {
    code = body(ctx);
  } catch (const UsageError& e) {
    code = report(kExitUsage, "usage error", e.what());
  } catch (const CLI::Error& e) {
    code = report(kExitUsage, "usage error", e.what());
  } catch (const ConfigMismatchError& e) {
    code = report(kExitConfigMismatch, "configuration mismatch", e.what());
  } catch (const CheckpointError& e) {
    code = report(kExitData, "checkpoint error", e.what());
  } catch (const DataError& e) {
    code = report(kExitData, "data error", e.what());
  } catch (const InvalidArgument& e) {
    code = report(kExitUsage, "invalid argument", e.what());
  } catch (const std::exception& e) {
    code = report(kExitInternal, "internal error", e.what());
  }
  logger->flush();

  ctx.timing_output("run.log");
  manifest.config = ctx.config;
  manifest.seeds = ctx.seeds;
  manifest.outputs = ctx.outputs();
  std::sort(manifest.outputs.begin(), manifest.outputs.end());
  manifest.exit_code = code;
  manifest.unhashed = ctx.unhashed();
  std::sort(manifest.unhashed.begin(), manifest.unhashed.end());
  std::vector<std::string> hashed;
  std::set_difference(manifest.outputs.begin(), manifest.outputs.end(), manifest.unhashed.begin(),
                      manifest.unhashed.end(), std::back_inserter(hashed));
  manifest.artifact_hash = artifact_hash(dir, hashed);
  manifest.finished_at = timestamp("%Y-%m-%dT%H:%M:%SZ");
  std::ofstream(dir / "manifest.json") << nlohmann::json(manifest).dump(2) << '\n';
  spdlog::set_default_logger(previous);
  return code;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace graspforge::cli
