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
#include <map>
#include <string>

#include <json.hpp>

#include "rtris/scenarios.hpp"

namespace rtris::cli {

/// Files of one run, kept in memory until the run has succeeded and then
/// written through temporary names so a reader never sees a partial file.
class OutputSet {
 public:
  void add(const std::string& name, std::string content) { files_[name] = std::move(content); }
  /// Writes every file, then `manifest_name` last. Throws Error on I/O failure.
  void commit(const std::filesystem::path& dir, const std::string& manifest_name, const std::string& manifest) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, std::string> files_;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

/// Summary statistics written to analysis.json, plus the ECDF curve file.
nlohmann::json analysis_summary(const SweepResult& result, const ScenarioConfig& cfg);
std::string difference_ecdf_csv(const SweepResult& result);
std::string policy_samples_csv(const SweepResult& result, double ptx_dbm);

}  // namespace rtris::cli
