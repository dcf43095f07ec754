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

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "outputs.hpp"
#include "rtris/error.hpp"
#include "rtris/parallel.hpp"
#include "rtris/path_io.hpp"
#include "rtris/validation.hpp"
#include "rtris/version.hpp"

namespace rtris::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Scene identity for the manifest, and the reference to record in the
// resolved config so it can be replayed from any working directory.
struct SceneIdentity {
  std::string ref;
  std::string hash;
};

SceneIdentity identify_scene(const ScenarioConfig& cfg, const fs::path& base_dir) {
  if (cfg.scene == "ground") return {"ground", hex64(fnv1a64("ground:" + cfg.ground_material))};
  const fs::path path = resolve_scene_path(cfg.scene, base_dir);
  const fs::path bundled = data_directory() / "scenes";
  std::string ref = cfg.scene;
  if (fs::weakly_canonical(path).parent_path() != fs::weakly_canonical(bundled))
    ref = fs::weakly_canonical(path).string();
  return {ref, hex64(fnv1a64(read_file(path)))};
}

Vec3 vec3_arg(const std::vector<double>& v, const char* what) {
  if (v.size() != 3) throw ConfigError(std::string(what) + " needs three values x,y,z");
  return {v[0], v[1], v[2]};
}

}  // namespace

json load_config_document(const CommonOptions& opts, fs::path& base_dir) {
  if (opts.config.empty()) throw ConfigError("--config is required");
  json doc;
  const fs::path p(opts.config);
  if (fs::exists(p)) {
    std::ifstream in(p);
    if (!in) throw ConfigError("cannot open config " + p.string());
    doc = json::parse(in, nullptr, false);
    if (doc.is_discarded()) throw ConfigError("config " + p.string() + " is not valid JSON");
    base_dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
  } else {
    doc = load_preset(opts.config);
    base_dir = fs::current_path();
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& o : opts.overrides) apply_override(doc, o);
  if (opts.has_seed) doc["seed"] = opts.seed;
  return doc;
}

int cmd_run(const CommonOptions& opts, bool coverage_only) {
  if (opts.out.empty()) throw ConfigError("--out is required");
  const auto start = std::chrono::steady_clock::now();
  fs::path base_dir;
  const json doc = load_config_document(opts, base_dir);
  const ScenarioConfig cfg = scenario_from_json(doc);
  if (coverage_only && motion_of(cfg.scenario) != Motion::grid)
    throw ConfigError("coverage runs need a grid scenario (C), got " + to_string(cfg.scenario));
  const Scene scene = load_scenario_scene(cfg, base_dir);
  const SceneIdentity sid = identify_scene(cfg, base_dir);

  json resolved = to_json(cfg);
  resolved["scene"] = sid.ref;

  const SweepResult result = run_scenario(scene, cfg, {opts.threads, true});

  OutputSet files;
  files.add("sweep.csv", sweep_csv(result));
  files.add("ecdf.csv", difference_ecdf_csv(result));
  files.add("policy_samples.csv", policy_samples_csv(result, cfg.ptx_dbm));
  files.add("analysis.json", analysis_summary(result, cfg).dump(2) + "\n");
  files.add("config.resolved.json", resolved.dump(2) + "\n");
  if (cfg.size_sweep) {
    const int idx = cfg.size_sweep->point == "df1" ? deep_fade_index(result) : std::stoi(cfg.size_sweep->point);
    if (idx < 0 || static_cast<std::size_t>(idx) >= result.rows.size())
      throw ConfigError("size_sweep.point is outside the sweep");
    const SweepRow& row = result.rows[static_cast<std::size_t>(idx)];
    files.add("size_sweep.csv", size_sweep_csv(ris_size_sweep(scene, cfg, cfg.size_sweep->sizes, row.ue, row.ris)));
  }

  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json manifest = {{"tool", "rtris"},
                   {"version", std::string(library_version())},
                   {"command", coverage_only ? "coverage" : "run"},
                   {"config", resolved},
                   {"scene", {{"ref", sid.ref}, {"fnv1a64", sid.hash}}},
                   {"outputs", files.names()},
                   {"threads", resolve_threads(opts.threads)},
                   {"wall_clock_s", seconds}};
  files.commit(opts.out, "manifest.json", manifest.dump(2) + "\n");
  std::cerr << "rtris: wrote " << files.names().size() + 1 << " files to " << opts.out << " in " << seconds
            << " s\n";
  return kOk;
}

int cmd_paths(const PathsOptions& opts) {
  fs::path base_dir;
  const json doc = load_config_document(opts.common, base_dir);
  const ScenarioConfig cfg = scenario_from_json(doc);
  const Scene scene = load_scenario_scene(cfg, base_dir);

  Placement pl;
  if (motion_of(cfg.scenario) == Motion::grid) {
    pl = grid_placements(cfg).front();
    pl.ue = Vec3(cfg.grid.center.x(), cfg.grid.center.y(), cfg.ue_height);
  } else {
    pl = sweep_placement(cfg, 0);
  }
  if (!opts.tx.empty()) pl.bs = vec3_arg(opts.tx, "--tx");
  if (!opts.rx.empty()) pl.ue = vec3_arg(opts.rx, "--rx");

  std::vector<PropagationPath> paths;
  if (opts.leg == "direct") {
    const std::optional<RisPanel> panel =
        cfg.ris ? std::optional<RisPanel>(make_panel(cfg, pl.ris, cfg.n_elements)) : std::nullopt;
    paths = direct_paths(scene, trace(scene, pl.bs, pl.ue, cfg.trace), panel ? &*panel : nullptr, cfg.path_filter);
  } else if (opts.leg == "bs-ris" || opts.leg == "ris-ue") {
    if (!cfg.ris) throw ConfigError("configuration has no RIS for leg " + opts.leg);
    TraceConfig tc = cfg.trace;
    if (motion_of(cfg.scenario) == Motion::grid) tc.max_diffractions = 0;
    paths = opts.leg == "bs-ris" ? trace(scene, pl.bs, pl.ris, tc) : trace(scene, pl.ris, pl.ue, tc);
    paths = filter_paths(scene, std::move(paths), cfg.path_filter);
  } else {
    throw ConfigError("--leg must be direct, bs-ris or ris-ue");
  }

  const std::string csv = path_dump_csv(scene, paths, cfg.freq_ghz);
  if (opts.common.out.empty()) {
    std::cout << csv;
  } else {
    OutputSet files;
    json manifest = {{"tool", "rtris"},
                     {"version", std::string(library_version())},
                     {"command", "paths"},
                     {"config", to_json(cfg)},
                     {"leg", opts.leg},
                     {"outputs", {"paths.csv"}}};
    files.add("paths.csv", csv);
    files.commit(opts.common.out, "manifest.json", manifest.dump(2) + "\n");
  }
  return kOk;
}

int cmd_validate(int threads, double lambda_error) {
  ValidationOptions vo;
  vo.threads = threads;
  vo.lambda_error = lambda_error;
  const auto checks = run_builtin_oracles(vo);
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.pass;
    std::printf("oracle=%s status=%s deviation=%.6g tolerance=%.6g unit=%s detail=\"%s\"\n", c.name.c_str(),
                c.pass ? "PASS" : "FAIL", c.deviation, c.tolerance, c.unit.empty() ? "-" : c.unit.c_str(),
                c.detail.c_str());
  }
  std::printf("summary status=%s passed=%zu total=%zu\n", all ? "PASS" : "FAIL",
              static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.pass; })),
              checks.size());
  std::fflush(stdout);
  return all ? kOk : kOracleFailure;
}

}  // namespace rtris::cli
