// SPDX-License-Identifier: Apache-2.0
//
// rtris: ray-traced channel simulator for reconfigurable intelligent surfaces
// Copyright (C) 2026 The rtris Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "rtris/error.hpp"
#include "rtris/version.hpp"

namespace {

void add_common(CLI::App* cmd, rtris::cli::CommonOptions& o, bool needs_out) {
  cmd->add_option("--config", o.config, "Config file or bundled preset name")->required();
  auto* out = cmd->add_option("--out", o.out, "Output directory");
  if (needs_out) out->required();
  cmd->add_option("--set", o.overrides, "Override, dotted.key=value (repeatable)");
  cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  cmd->add_option_function<std::uint64_t>(
      "--seed",
      [&o](const std::uint64_t& s) {
        o.seed = s;
        o.has_seed = true;
      },
      "Master random seed");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace rtris::cli;
  CLI::App app{"rtris: ray-traced channels with reconfigurable intelligent surfaces"};
  app.set_version_flag("--version", std::string(rtris::library_version()));
  app.require_subcommand(1);

  CommonOptions run_opts, cov_opts;
  auto* run = app.add_subcommand("run", "Run a scenario and write CSV outputs");
  add_common(run, run_opts, true);
  auto* coverage = app.add_subcommand("coverage", "Run a coverage-grid scenario (alias of run for scenario C)");
  add_common(coverage, cov_opts, true);

  PathsOptions paths_opts;
  auto* paths = app.add_subcommand("paths", "Dump the traced paths of one placement");
  add_common(paths, paths_opts.common, false);
  paths->add_option("--leg", paths_opts.leg, "direct, bs-ris or ris-ue")->capture_default_str();
  paths->add_option("--tx", paths_opts.tx, "Transmitter x y z (meters)")->expected(3)->delimiter(',');
  paths->add_option("--rx", paths_opts.rx, "Receiver x y z (meters)")->expected(3)->delimiter(',');

  int validate_threads = 0;
  double lambda_error = 0.0;
  auto* validate = app.add_subcommand("validate", "Run the built-in oracle suite");
  validate->add_option("--threads", validate_threads, "Worker threads (0 = all cores)");
  validate->add_option("--inject-lambda-error", lambda_error)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*run) return cmd_run(run_opts, false);
    if (*coverage) return cmd_run(cov_opts, true);
    if (*paths) return cmd_paths(paths_opts);
    if (*validate) return cmd_validate(validate_threads, lambda_error);
  } catch (const rtris::ConfigError& e) {
    std::cerr << "rtris: config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const rtris::SceneError& e) {
    std::cerr << "rtris: scene error: " << e.what() << "\n";
    return kSceneError;
  } catch (const std::exception& e) {
    std::cerr << "rtris: runtime error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kRuntimeError;
}
