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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "rtris/scenarios.hpp"

namespace rtris::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kSceneError = 2,
  kRuntimeError = 3,
  kOracleFailure = 4,
};

struct CommonOptions {
  std::string config;
  std::string out;
  std::vector<std::string> overrides;
  int threads = 0;
  bool has_seed = false;
  std::uint64_t seed = 0;
};

/// Config document from a file path or a bundled preset name, with the
/// overrides and --seed applied. `base_dir` receives the directory used to
/// resolve relative scene paths.
nlohmann::json load_config_document(const CommonOptions& opts, std::filesystem::path& base_dir);

int cmd_run(const CommonOptions& opts, bool coverage_only);

struct PathsOptions {
  CommonOptions common;
  std::string leg = "direct";  // direct | bs-ris | ris-ue
  std::vector<double> tx;
  std::vector<double> rx;
};
int cmd_paths(const PathsOptions& opts);

int cmd_validate(int threads, double lambda_error);

}  // namespace rtris::cli
