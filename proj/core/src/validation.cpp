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

#include "rtris/validation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rtris/analysis.hpp"
#include "rtris/channel.hpp"
#include "rtris/scenarios.hpp"

namespace rtris {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

ScenarioConfig preset_without_ris(const char* name, double lambda_error) {
  ScenarioConfig cfg = scenario_from_json(load_preset(name));
  cfg.ris.reset();
  cfg.freq_ghz /= 1.0 + lambda_error;
  return cfg;
}

void friis_checks(const ValidationOptions& opts, std::vector<OracleCheck>& out) {
  ScenarioConfig cfg = preset_without_ris("free_space_a", opts.lambda_error);
  const double f_nominal = cfg.freq_ghz * (1.0 + opts.lambda_error);
  const Scene scene = load_scenario_scene(cfg, {});
  const SweepResult res = run_scenario(scene, cfg, {opts.threads, false});

  std::vector<double> d, p_lin;
  double worst = 0.0;
  for (const auto& row : res.rows) {
    const double dist = (row.ue - Vec3(cfg.bs.x(), cfg.bs.y(), cfg.tx_height)).norm();
    const double ref = cfg.ptx_dbm + friis_gain_db(dist, f_nominal);
    worst = std::max(worst, std::abs(row.report.p_los_dbm - ref));
    d.push_back(dist);
    p_lin.push_back(std::pow(10.0, (row.report.p_los_dbm - cfg.ptx_dbm) / 10.0));
  }
  out.push_back({"friis_path_loss", worst <= 0.01, worst, 0.01, "dB",
                 "max |P_sim - P_friis| over " + std::to_string(res.rows.size()) + " points, " + fmt(d.front()) +
                     " to " + fmt(d.back()) + " m"});

  const FitResult line = fit_loglog(d, p_lin);
  const double per_octave = 10.0 * std::log10(2.0) * line.coefficients[1];
  const double err = std::abs(per_octave + 20.0 * std::log10(2.0));
  out.push_back({"friis_slope", err <= 0.01, err, 0.01, "dB/octave", "slope " + fmt(per_octave) + " dB/octave"});
}

void two_ray_checks(const ValidationOptions& opts, std::vector<OracleCheck>& out) {
  ScenarioConfig cfg = preset_without_ris("two_ray_a", opts.lambda_error);
  const double f_nominal = cfg.freq_ghz * (1.0 + opts.lambda_error);
  const Scene scene = load_scenario_scene(cfg, {});
  const SweepResult res = run_scenario(scene, cfg, {opts.threads, false});

  std::vector<double> sim, ref;
  for (const auto& row : res.rows) {
    const double horiz = (Vec2(row.ue.x(), row.ue.y()) - cfg.bs).norm();
    sim.push_back(row.report.p_los_dbm);
    ref.push_back(cfg.ptx_dbm +
                  two_ray_power(horiz, cfg.tx_height, cfg.ue_height, f_nominal, scene.ground_material()));
  }
  double worst = 0.0;
  const auto clear = samples_clear_of_nulls(ref, 1.0);
  for (std::size_t i : clear) worst = std::max(worst, std::abs(sim[i] - ref[i]));
  out.push_back({"two_ray_power", worst <= 0.5, worst, 0.5, "dB",
                 std::to_string(clear.size()) + " of " + std::to_string(ref.size()) + " samples clear of nulls"});

  const auto ref_nulls = local_minima(ref);
  const auto sim_nulls = local_minima(sim);
  double mismatch = 0.0;
  for (std::size_t r : ref_nulls) {
    std::size_t best = sim.size();
    for (std::size_t s : sim_nulls)
      if (best == sim.size() || std::abs(double(s) - double(r)) < std::abs(double(best) - double(r))) best = s;
    const double steps = best == sim.size() ? double(sim.size()) : std::abs(double(best) - double(r));
    mismatch = std::max(mismatch, steps * cfg.sweep.step_m);
  }
  out.push_back({"two_ray_nulls", mismatch < cfg.sweep.step_m, mismatch, cfg.sweep.step_m, "m",
                 std::to_string(ref_nulls.size()) + " reference nulls"});
}

void cascade_checks(const ValidationOptions& opts, std::vector<OracleCheck>& out) {
  const double f_nominal = 28.0;
  const double f_sim = f_nominal / (1.0 + opts.lambda_error);
  const double dt = 20.0, dr = 20.0, h = 5.0;
  const Scene scene = ground_only_scene(*MaterialLibrary::defaults().find("concrete"));
  TraceConfig tc;
  tc.max_reflections = 0;
  const Vec3 ris(0.0, 0.0, h);
  const Vec3 bs = ris + dt * Vec3(std::cos(kPi / 4), std::sin(kPi / 4), 0.0);
  const Vec3 ue = ris + dr * Vec3(std::cos(-kPi / 4), std::sin(-kPi / 4), 0.0);
  const auto t = trace(scene, bs, ris, tc);
  const auto r = trace(scene, ris, ue, tc);

  std::vector<double> n_values, powers;
  double worst = 0.0;
  for (int n : {16, 64, 256, 1024}) {
    const RisPanel panel = RisPanel::square(ris, 0.0, 0.0, n, f_sim);
    const LinkGeometry link = assemble_link(scene, f_sim, {}, &panel, t, r);
    const double amp = std::abs(cascade(link.ht, link.hr, optimal_coeffs(link.ht, link.hr)));
    const double ref = ris_cascade_closed_form(n, (bs - ris).norm(), (ue - ris).norm(), f_nominal);
    worst = std::max(worst, std::abs(20.0 * std::log10(amp / ref)));
    n_values.push_back(n);
    powers.push_back(amp * amp);
  }
  const double slope = fit_loglog(n_values, powers).coefficients[1];
  out.push_back({"n_squared_slope", slope >= 1.95 && slope <= 2.05, std::abs(slope - 2.0), 0.05, "",
                 "log-log slope " + fmt(slope) + " over N = 16..1024"});
  out.push_back({"cascade_closed_form", worst <= 0.5, worst, 0.5, "dB",
                 "free space, d_t = d_r = 20 m, N = 16..1024"});
}

}  // namespace

std::vector<std::size_t> samples_clear_of_nulls(const std::vector<double>& y_db, double margin_db) {
  std::vector<bool> excluded(y_db.size(), false);
  for (std::size_t m : local_minima(y_db)) {
    const double limit = y_db[m] + margin_db;
    for (std::size_t i = m; i < y_db.size() && y_db[i] < limit; ++i) excluded[i] = true;
    for (std::size_t i = m + 1; i-- > 0 && y_db[i] < limit;) excluded[i] = true;
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < y_db.size(); ++i)
    if (!excluded[i] && std::isfinite(y_db[i])) keep.push_back(i);
  return keep;
}

std::vector<OracleCheck> run_builtin_oracles(const ValidationOptions& opts) {
  std::vector<OracleCheck> out;
  friis_checks(opts, out);
  two_ray_checks(opts, out);
  cascade_checks(opts, out);
  return out;
}

}  // namespace rtris
