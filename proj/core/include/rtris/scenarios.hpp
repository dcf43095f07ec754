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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rtris/channel.hpp"
#include "rtris/ris.hpp"
#include "rtris/scene.hpp"
#include "rtris/tracer.hpp"

namespace rtris {

enum class ScenarioKind { a, b, b_variant_ue, c, free_space_a, free_space_b, two_ray_a };

ScenarioKind parse_scenario(const std::string& name);
std::string to_string(ScenarioKind kind);

/// What moves during a run.
enum class Motion { ue_and_ris, ris, ue, grid };
Motion motion_of(ScenarioKind kind);

struct SweepSpec {
  Vec2 axis{0.0, 1.0};  // horizontal unit vector
  double step_m = 0.278;
  int steps = 38;  // rows = steps + 1
};

struct GridSpec {
  int nx = 41;
  int ny = 41;
  double spacing_wavelengths = 2.5;
  Vec2 center = Vec2::Zero();
};

struct RisPlacement {
  Vec2 position = Vec2::Zero();
  double azimuth_deg = 0.0;  // boresight, from east towards north
};

struct SizeSweepSpec {
  std::vector<int> sizes{16, 64, 256, 1024};
  // "df1" (deepest direct-channel fade of the sweep) or a row index.
  std::string point = "df1";
};

/// Resolved run configuration. Table-1 defaults unless overridden.
struct ScenarioConfig {
  int preset_version = 1;
  ScenarioKind scenario = ScenarioKind::a;
  std::string scene = "suburb-28ghz";  // bundled name, path, or "ground" for a flat ground only
  std::string ground_material = "concrete";  // used by "ground"
  double freq_ghz = 28.0;
  double ptx_dbm = 30.0;
  double tx_height = 5.0;
  double ue_height = 1.0;
  double ris_height = 5.0;
  double tilt_deg = -3.0;
  int n_elements = 1024;
  CoefficientPolicy policy = CoefficientPolicy::optimal;
  std::uint64_t seed = 1;
  int random_trials = 100;
  PathFilter path_filter = PathFilter::all;
  TraceConfig trace;
  Vec2 bs = Vec2::Zero();
  Vec2 ue = Vec2::Zero();
  std::optional<RisPlacement> ris;
  SweepSpec sweep;
  GridSpec grid;
  std::optional<SizeSweepSpec> size_sweep;

  /// Defaults for a scenario kind before any preset values are applied.
  static ScenarioConfig defaults(ScenarioKind kind);
  /// Throws ConfigError.
  void validate() const;
};

/// Parses a config document over the defaults of its `scenario`. Unknown
/// keys are rejected. Throws ConfigError.
ScenarioConfig scenario_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ScenarioConfig& cfg);

/// Applies a dotted override "trace.max_reflections=3" to a config document.
/// The value is parsed as JSON when possible, otherwise taken as a string.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// Loads the scene named by the config; `base_dir` resolves relative paths.
Scene load_scenario_scene(const ScenarioConfig& cfg, const std::filesystem::path& base_dir);

/// Bundled preset document by name ("scenario_a", ...). Throws ConfigError.
nlohmann::json load_preset(const std::string& name);

struct SweepRow {
  int index = 0;
  double coord_m = 0.0;  // distance along the sweep axis (sweeps)
  int ix = -1;           // grid column / row (grids)
  int iy = -1;
  Vec3 ue = Vec3::Zero();
  Vec3 ris = Vec3::Zero();
  ChannelReport report;
  double d_t = 0.0;  // BS to RIS centre
  double d_r = 0.0;  // RIS centre to UE
  double p_ris_optimal_dbm = 0.0;
  double p_ris_unit_dbm = 0.0;
  double p_ris_random_mean_dbm = 0.0;  // mean linear power over random_trials seeds
  double p_ris_incoherent_dbm = 0.0;   // sum |ht_n|^2 |hr_n|^2, the random-phase expectation
  std::optional<ChannelReport> diffraction;  // scenario C: direct channel with one diffraction
};

struct SweepResult {
  ScenarioKind kind = ScenarioKind::a;
  bool is_grid = false;
  int nx = 0;
  int ny = 0;
  double grid_spacing_m = 0.0;
  std::vector<SweepRow> rows;
  // Scenario C: arrival azimuth (radians, direction the wave travels) of the
  // strongest RIS-to-UE path at the grid centre.
  double dominant_arrival_azimuth = 0.0;
  // Random-policy samples for each row, kept for statistics.
  std::vector<std::vector<double>> random_power_samples;
};

struct RunOptions {
  int threads = 0;  // 0 = hardware concurrency
  bool keep_random_samples = false;
};

SweepResult run_scenario(const Scene& scene, const ScenarioConfig& cfg, const RunOptions& opts = {});
SweepResult run_scenario_a(const Scene& scene, const ScenarioConfig& cfg, const RunOptions& opts = {});
SweepResult run_scenario_b(const Scene& scene, const ScenarioConfig& cfg, const RunOptions& opts = {});
SweepResult run_scenario_c(const Scene& scene, const ScenarioConfig& cfg, const RunOptions& opts = {});

/// Row index with the lowest direct-channel power.
int deep_fade_index(const SweepResult& result);

struct SizeRow {
  int n_elements = 0;
  double p_ris_optimal_dbm = 0.0;
  double p_ris_unit_dbm = 0.0;
  double p_ris_random_dbm = 0.0;       // one draw (config seed)
  double p_ris_random_mean_dbm = 0.0;  // mean linear power over random_trials draws
};

/// RIS size sweep at one placement (BS, RIS centre, UE fixed).
std::vector<SizeRow> ris_size_sweep(const Scene& scene, const ScenarioConfig& cfg, const std::vector<int>& sizes,
                                    const Vec3& ue, const Vec3& ris_center);

/// Positions (tx, ris centre, ue) of row `index` for the sweep kinds.
struct Placement {
  Vec3 bs, ris, ue;
};
Placement sweep_placement(const ScenarioConfig& cfg, int index);
std::vector<Placement> grid_placements(const ScenarioConfig& cfg);
RisPanel make_panel(const ScenarioConfig& cfg, const Vec3& center, int n_elements);

std::string sweep_csv(const SweepResult& result);
std::string size_sweep_csv(const std::vector<SizeRow>& rows);

}  // namespace rtris
