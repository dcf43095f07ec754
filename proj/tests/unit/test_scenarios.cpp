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

#include <gtest/gtest.h>

#include <sstream>

#include "rtris/error.hpp"
#include "rtris/scenarios.hpp"

using namespace rtris;
using nlohmann::json;

namespace {

ScenarioConfig preset(const std::string& name) { return scenario_from_json(load_preset(name)); }

ScenarioConfig small_b() {
  json doc = load_preset("scenario_b");
  apply_override(doc, "sweep.steps=6");
  apply_override(doc, "random_trials=5");
  return scenario_from_json(doc);
}

}  // namespace

TEST(ScenarioNames, RoundTrip) {
  for (auto k : {ScenarioKind::a, ScenarioKind::b, ScenarioKind::b_variant_ue, ScenarioKind::c,
                 ScenarioKind::free_space_a, ScenarioKind::free_space_b, ScenarioKind::two_ray_a})
    EXPECT_EQ(parse_scenario(to_string(k)), k);
  EXPECT_THROW(parse_scenario("D"), ConfigError);
}

TEST(Presets, AllParseAndValidate) {
  for (const char* name : {"scenario_a", "scenario_b", "scenario_b_ue", "scenario_c", "free_space_a", "free_space_b",
                           "two_ray_a"}) {
    SCOPED_TRACE(name);
    const ScenarioConfig cfg = preset(name);
    EXPECT_NO_THROW(cfg.validate());
    EXPECT_NO_THROW(load_scenario_scene(cfg, {}));
  }
  EXPECT_THROW(load_preset("nope"), ConfigError);
}

TEST(Presets, JsonRoundTrip) {
  const ScenarioConfig a = preset("scenario_c");
  const json j = to_json(a);
  EXPECT_EQ(to_json(scenario_from_json(j)), j);
}

TEST(Config, Errors) {
  EXPECT_THROW(scenario_from_json(json::object()), ConfigError);
  json doc = load_preset("scenario_b");
  doc["bogus"] = 1;
  EXPECT_THROW(scenario_from_json(doc), ConfigError);
  doc = load_preset("scenario_b");
  doc["n_elements"] = 1000;
  EXPECT_THROW(scenario_from_json(doc), ConfigError);
  doc = load_preset("scenario_b");
  doc["preset_version"] = 2;
  EXPECT_THROW(scenario_from_json(doc), ConfigError);
  doc = load_preset("scenario_b");
  doc["freq_ghz"] = "fast";
  EXPECT_THROW(scenario_from_json(doc), ConfigError);
  doc = load_preset("scenario_b");
  doc.erase("ris");
  EXPECT_THROW(scenario_from_json(doc), ConfigError);
}

TEST(Config, Overrides) {
  json doc = load_preset("scenario_a");
  apply_override(doc, "policy=random");
  apply_override(doc, "trace.max_reflections=2");
  apply_override(doc, "ris.azimuth_deg=170.5");
  const ScenarioConfig cfg = scenario_from_json(doc);
  EXPECT_EQ(cfg.policy, CoefficientPolicy::random);
  EXPECT_EQ(cfg.trace.max_reflections, 2);
  EXPECT_DOUBLE_EQ(cfg.ris->azimuth_deg, 170.5);
  EXPECT_THROW(apply_override(doc, "novalue"), ConfigError);
  EXPECT_THROW(apply_override(doc, "a..b=1"), ConfigError);
  EXPECT_THROW(apply_override(doc, "policy.x=1"), ConfigError);
}

TEST(Placement, MotionPerScenario) {
  const ScenarioConfig a = preset("scenario_a");
  const Placement a0 = sweep_placement(a, 0), a5 = sweep_placement(a, 5);
  EXPECT_NEAR((a5.ue - a0.ue).norm(), 5 * 0.278, 1e-12);
  EXPECT_NEAR((a5.ris - a0.ris).norm(), 5 * 0.278, 1e-12);
  EXPECT_EQ(a5.bs, a0.bs);
  EXPECT_DOUBLE_EQ(a0.bs.z(), a.tx_height);
  EXPECT_DOUBLE_EQ(a0.ue.z(), a.ue_height);
  EXPECT_DOUBLE_EQ(a0.ris.z(), a.ris_height);

  const ScenarioConfig b = preset("scenario_b");
  EXPECT_EQ(sweep_placement(b, 7).ue, sweep_placement(b, 0).ue);
  EXPECT_NE(sweep_placement(b, 7).ris, sweep_placement(b, 0).ris);

  const ScenarioConfig bu = preset("scenario_b_ue");
  EXPECT_NE(sweep_placement(bu, 7).ue, sweep_placement(bu, 0).ue);
  EXPECT_EQ(sweep_placement(bu, 7).ris, sweep_placement(bu, 0).ris);
}

TEST(Placement, GridIsCentred) {
  const ScenarioConfig c = preset("scenario_c");
  const auto g = grid_placements(c);
  ASSERT_EQ(g.size(), 41u * 41u);
  const Vec3 mid = g[20 * 41 + 20].ue;
  EXPECT_NEAR(mid.x(), c.grid.center.x(), 1e-12);
  EXPECT_NEAR(mid.y(), c.grid.center.y(), 1e-12);
  EXPECT_NEAR(g[1].ue.x() - g[0].ue.x(), 2.5 * wavelength(28.0), 1e-12);
  EXPECT_NEAR(g[41].ue.y() - g[0].ue.y(), 2.5 * wavelength(28.0), 1e-12);
}

TEST(Sweep, RowCountAndCsv) {
  const ScenarioConfig cfg = small_b();
  const Scene scene = load_scenario_scene(cfg, {});
  const SweepResult r = run_scenario(scene, cfg, {1, true});
  ASSERT_EQ(r.rows.size(), 7u);
  ASSERT_EQ(r.random_power_samples.size(), 7u);
  EXPECT_EQ(r.random_power_samples[0].size(), 5u);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    EXPECT_EQ(r.rows[i].index, static_cast<int>(i));
    EXPECT_NEAR(r.rows[i].coord_m, 0.278 * i, 1e-12);
    EXPECT_GE(r.rows[i].p_ris_optimal_dbm, r.rows[i].p_ris_unit_dbm - 1e-9);
  }
  const std::string csv = sweep_csv(r);
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("index,coord_m,ue_x,ue_y,ris_x,ris_y,p_los_dbm,p_ris_dbm,p_total_dbm", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 8);
}

TEST(Sweep, ThreadCountDoesNotChangeOutput) {
  const ScenarioConfig cfg = small_b();
  const Scene scene = load_scenario_scene(cfg, {});
  const std::string one = sweep_csv(run_scenario(scene, cfg, {1, false}));
  EXPECT_EQ(sweep_csv(run_scenario(scene, cfg, {4, false})), one);
}

TEST(Sweep, BlockedLinkWritesMinusInf) {
  json doc = load_preset("free_space_b");
  apply_override(doc, "sweep.steps=1");
  apply_override(doc, "path_filter=exclude_los");
  apply_override(doc, "trace.max_reflections=0");
  apply_override(doc, "random_trials=2");
  const ScenarioConfig cfg = scenario_from_json(doc);
  const Scene scene = load_scenario_scene(cfg, {});
  const SweepResult r = run_scenario(scene, cfg);
  EXPECT_EQ(r.rows[0].report.p_los_dbm, -std::numeric_limits<double>::infinity());
  EXPECT_NE(sweep_csv(r).find("-inf"), std::string::npos);
}

TEST(Sweep, WrongRunnerThrows) {
  const ScenarioConfig cfg = small_b();
  const Scene scene = load_scenario_scene(cfg, {});
  EXPECT_THROW(run_scenario_c(scene, cfg), ConfigError);
  EXPECT_THROW(run_scenario_a(scene, cfg), ConfigError);
}

TEST(SizeSweep, GainGrowsWithSize) {
  ScenarioConfig cfg = preset("free_space_b");
  cfg.random_trials = 4;
  const Scene scene = load_scenario_scene(cfg, {});
  const Placement p = sweep_placement(cfg, 0);
  const auto rows = ris_size_sweep(scene, cfg, {16, 64, 256}, p.ue, p.ris);
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 1; i < rows.size(); ++i)
    EXPECT_NEAR(rows[i].p_ris_optimal_dbm - rows[i - 1].p_ris_optimal_dbm, 20 * std::log10(4.0), 0.05);
  EXPECT_EQ(size_sweep_csv(rows).rfind("n_elements,p_ris_optimal_dbm", 0), 0u);
}
