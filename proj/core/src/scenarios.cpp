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


#include "rtris/scenarios.hpp"

#include <algorithm>
#include <limits>

#include "rtris/csv.hpp"
#include "rtris/em.hpp"
#include "rtris/error.hpp"
#include "rtris/parallel.hpp"

namespace rtris {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double power_dbm_from_linear(double p, double ptx_dbm) {
  return p > 0.0 ? ptx_dbm + 10.0 * std::log10(p) : kNegInf;
}

struct PolicyStats {
  double optimal, unit, random_mean, incoherent;
  std::vector<double> random_samples;  // linear |h_ris|^2
};

PolicyStats policy_stats(const LinkGeometry& link, const ScenarioConfig& cfg, std::uint64_t row_seed,
                         bool keep_samples) {
  PolicyStats s{kNegInf, kNegInf, kNegInf, kNegInf, {}};
  if (!link.has_panel) return s;
  const auto& ht = link.ht.per_element;
  const auto& hr = link.hr.per_element;
  s.optimal = received_power_dbm(cascade(link.ht, link.hr, optimal_coeffs(link.ht, link.hr)), cfg.ptx_dbm);
  s.unit = received_power_dbm(cascade(link.ht, link.hr, unit_coeffs(static_cast<int>(ht.size()))), cfg.ptx_dbm);
  double mean = 0.0;
  for (int t = 0; t < cfg.random_trials; ++t) {
    const auto c = random_coeffs(static_cast<int>(ht.size()), point_seed(row_seed, static_cast<std::uint64_t>(t)));
    const double p = std::norm(cascade(link.ht, link.hr, c));
    mean += p;
    if (keep_samples) s.random_samples.push_back(p);
  }
  s.random_mean = power_dbm_from_linear(mean / cfg.random_trials, cfg.ptx_dbm);
  double inc = 0.0;
  for (std::size_t n = 0; n < ht.size(); ++n) inc += std::norm(ht[n]) * std::norm(hr[n]);
  s.incoherent = power_dbm_from_linear(inc, cfg.ptx_dbm);
  return s;
}

void fill_row(SweepRow& row, const LinkGeometry& link, const ScenarioConfig& cfg, std::vector<double>* samples) {
  const std::uint64_t row_seed = point_seed(cfg.seed, static_cast<std::uint64_t>(row.index));
  if (link.has_panel) {
    const RisCoefficients c = make_coefficients(link, {cfg.policy, row_seed});
    row.report = make_report(link, &c, cfg.ptx_dbm);
  } else {
    row.report = make_report(link, nullptr, cfg.ptx_dbm);
  }
  auto stats = policy_stats(link, cfg, row_seed, samples != nullptr);
  row.p_ris_optimal_dbm = stats.optimal;
  row.p_ris_unit_dbm = stats.unit;
  row.p_ris_random_mean_dbm = stats.random_mean;
  row.p_ris_incoherent_dbm = stats.incoherent;
  if (samples) *samples = std::move(stats.random_samples);
}

Vec3 at_height(const Vec2& p, double h) { return {p.x(), p.y(), h}; }

bool stores_rays(const TraceConfig& tc, std::size_t queries) { return tc.max_reflections >= 2 && queries > 1; }

std::vector<PropagationPath> reversed_all(std::vector<PropagationPath> paths) {
  for (auto& p : paths) p = reversed(p);
  return paths;
}

SweepResult run_sweep(const Scene& scene, const ScenarioConfig& cfg, const RunOptions& opts) {
  cfg.validate();
  const Motion motion = motion_of(cfg.scenario);
  if (motion == Motion::grid) throw ConfigError("grid scenario passed to the sweep runner");
  const std::size_t n_rows = static_cast<std::size_t>(cfg.sweep.steps) + 1;
  const TraceConfig& tc = cfg.trace;
  const Vec3 bs = at_height(cfg.bs, cfg.tx_height);

  std::vector<Placement> places(n_rows);
  for (std::size_t i = 0; i < n_rows; ++i) places[i] = sweep_placement(cfg, static_cast<int>(i));

  const bool has_ris = cfg.ris.has_value();
  const PathFinder bs_finder(scene, bs, tc, stores_rays(tc, n_rows));
  std::optional<PathFinder> ue_finder, ris_finder;
  std::vector<PropagationPath> fixed_los, fixed_t;
  if (motion == Motion::ris) {
    ue_finder.emplace(scene, places[0].ue, tc, stores_rays(tc, n_rows));
    fixed_los = bs_finder.paths_to(places[0].ue);
  }
  if (motion == Motion::ue && has_ris) {
    ris_finder.emplace(scene, places[0].ris, tc, stores_rays(tc, n_rows));
    fixed_t = bs_finder.paths_to(places[0].ris);
  }

  SweepResult result;
  result.kind = cfg.scenario;
  result.rows.resize(n_rows);
  if (opts.keep_random_samples) result.random_power_samples.resize(n_rows);

  parallel_for(n_rows, opts.threads, [&](std::size_t i) {
    const Placement& pl = places[i];
    SweepRow& row = result.rows[i];
    row.index = static_cast<int>(i);
    row.coord_m = static_cast<double>(i) * cfg.sweep.step_m;
    row.ue = pl.ue;
    row.ris = pl.ris;
    std::optional<RisPanel> panel;
    if (has_ris) {
      panel = make_panel(cfg, pl.ris, cfg.n_elements);
      row.d_t = (pl.ris - pl.bs).norm();
      row.d_r = (pl.ue - pl.ris).norm();
    }
    std::vector<PropagationPath> los = motion == Motion::ris ? fixed_los : bs_finder.paths_to(pl.ue);
    los = direct_paths(scene, std::move(los), panel ? &*panel : nullptr, cfg.path_filter);
    std::vector<PropagationPath> t, r;
    if (has_ris) {
      switch (motion) {
        case Motion::ue_and_ris:
          t = bs_finder.paths_to(pl.ris);
          r = trace(scene, pl.ris, pl.ue, tc);
          break;
        case Motion::ris:
          t = bs_finder.paths_to(pl.ris);
          r = reversed_all(ue_finder->paths_to(pl.ris));
          break;
        case Motion::ue:
          t = fixed_t;
          r = ris_finder->paths_to(pl.ue);
          break;
        case Motion::grid:
          break;
      }
    }
    const LinkGeometry link =
        assemble_link(scene, cfg.freq_ghz, los, panel ? &*panel : nullptr, t, r, cfg.path_filter);
    fill_row(row, link, cfg, opts.keep_random_samples ? &result.random_power_samples[i] : nullptr);
  });
  return result;
}

}  // namespace

RisPanel make_panel(const ScenarioConfig& cfg, const Vec3& center, int n_elements) {
  if (!cfg.ris) throw ConfigError("configuration has no RIS");
  return RisPanel::square(center, deg2rad(cfg.ris->azimuth_deg), deg2rad(cfg.tilt_deg), n_elements, cfg.freq_ghz);
}

Placement sweep_placement(const ScenarioConfig& cfg, int index) {
  const Vec2 axis = cfg.sweep.axis.normalized();
  const Vec2 offset = (index * cfg.sweep.step_m) * axis;
  const Vec2 ris0 = cfg.ris ? cfg.ris->position : Vec2::Zero();
  Placement p;
  p.bs = at_height(cfg.bs, cfg.tx_height);
  p.ue = at_height(cfg.ue, cfg.ue_height);
  p.ris = at_height(ris0, cfg.ris_height);
  switch (motion_of(cfg.scenario)) {
    case Motion::ue_and_ris:
      p.ue = at_height(cfg.ue + offset, cfg.ue_height);
      p.ris = at_height(ris0 + offset, cfg.ris_height);
      break;
    case Motion::ris:
      p.ris = at_height(ris0 + offset, cfg.ris_height);
      break;
    case Motion::ue:
      p.ue = at_height(cfg.ue + offset, cfg.ue_height);
      break;
    case Motion::grid:
      break;
  }
  return p;
}

std::vector<Placement> grid_placements(const ScenarioConfig& cfg) {
  const double s = cfg.grid.spacing_wavelengths * wavelength(cfg.freq_ghz);
  const Vec2 ris0 = cfg.ris ? cfg.ris->position : Vec2::Zero();
  std::vector<Placement> out;
  out.reserve(static_cast<std::size_t>(cfg.grid.nx) * static_cast<std::size_t>(cfg.grid.ny));
  for (int iy = 0; iy < cfg.grid.ny; ++iy)
    for (int ix = 0; ix < cfg.grid.nx; ++ix) {
      const Vec2 xy = cfg.grid.center + Vec2((ix - 0.5 * (cfg.grid.nx - 1)) * s, (iy - 0.5 * (cfg.grid.ny - 1)) * s);
      out.push_back({at_height(cfg.bs, cfg.tx_height), at_height(ris0, cfg.ris_height), at_height(xy, cfg.ue_height)});
    }
  return out;
}

SweepResult run_scenario_a(const Scene& scene, const ScenarioConfig& cfg, const RunOptions& opts) {
  if (motion_of(cfg.scenario) != Motion::ue_and_ris) throw ConfigError("not an A-type scenario");
  return run_sweep(scene, cfg, opts);
}

SweepResult run_scenario_b(const Scene& scene, const ScenarioConfig& cfg, const RunOptions& opts) {
  const Motion m = motion_of(cfg.scenario);
  if (m != Motion::ris && m != Motion::ue) throw ConfigError("not a B-type scenario");
  return run_sweep(scene, cfg, opts);
}

SweepResult run_scenario_c(const Scene& scene, const ScenarioConfig& cfg, const RunOptions& opts) {
  cfg.validate();
  if (motion_of(cfg.scenario) != Motion::grid) throw ConfigError("not a grid scenario");
  const auto places = grid_placements(cfg);
  const Vec3 bs = at_height(cfg.bs, cfg.tx_height);
  const bool has_ris = cfg.ris.has_value();

  TraceConfig tc_go = cfg.trace;
  tc_go.max_diffractions = 0;
  TraceConfig tc_d = cfg.trace;
  tc_d.max_diffractions = 1;

  // One finder serves both direct-channel modes: its reflection-only subset
  // is exactly what the reflection-only finder would return.
  const PathFinder bs_finder(scene, bs, tc_d, stores_rays(tc_d, places.size()));
  const auto go_only = [](std::vector<PropagationPath> paths) {
    return filter_paths(std::move(paths), [](const PropagationPath& p) { return p.diffraction_count() == 0; });
  };

  std::optional<PathFinder> ris_finder;
  std::optional<RisPanel> panel;
  std::vector<PropagationPath> t;
  const Vec3 ris_center = places.front().ris;
  if (has_ris) {
    panel = make_panel(cfg, ris_center, cfg.n_elements);
    ris_finder.emplace(scene, ris_center, tc_go, stores_rays(tc_go, places.size()));
    t = go_only(bs_finder.paths_to(ris_center));
  }

  SweepResult result;
  result.kind = cfg.scenario;
  result.is_grid = true;
  result.nx = cfg.grid.nx;
  result.ny = cfg.grid.ny;
  result.grid_spacing_m = cfg.grid.spacing_wavelengths * wavelength(cfg.freq_ghz);
  result.rows.resize(places.size());
  if (opts.keep_random_samples) result.random_power_samples.resize(places.size());

  parallel_for(places.size(), opts.threads, [&](std::size_t i) {
    const Placement& pl = places[i];
    SweepRow& row = result.rows[i];
    row.index = static_cast<int>(i);
    row.ix = static_cast<int>(i % static_cast<std::size_t>(cfg.grid.nx));
    row.iy = static_cast<int>(i / static_cast<std::size_t>(cfg.grid.nx));
    row.ue = pl.ue;
    row.ris = pl.ris;
    const RisPanel* pp = panel ? &*panel : nullptr;
    if (pp) {
      row.d_t = (pl.ris - pl.bs).norm();
      row.d_r = (pl.ue - pl.ris).norm();
    }
    auto all = bs_finder.paths_to(pl.ue);
    const auto los_go = direct_paths(scene, go_only(all), pp, cfg.path_filter);
    const auto los_d = direct_paths(scene, std::move(all), pp, cfg.path_filter);
    std::vector<PropagationPath> r;
    if (pp) r = ris_finder->paths_to(pl.ue);
    const LinkGeometry link = assemble_link(scene, cfg.freq_ghz, los_go, pp, t, r, cfg.path_filter);
    fill_row(row, link, cfg, opts.keep_random_samples ? &result.random_power_samples[i] : nullptr);
    const LinkGeometry link_d = assemble_link(scene, cfg.freq_ghz, los_d, nullptr, {}, {}, cfg.path_filter);
    row.diffraction = make_report(link_d, nullptr, cfg.ptx_dbm);
  });

  if (has_ris) {
    const Vec3 centre(cfg.grid.center.x(), cfg.grid.center.y(), cfg.ue_height);
    const auto r = ris_finder->paths_to(centre);
    double best = -1.0;
    for (const auto& p : r) {
      const double g = std::abs(path_gain(p, scene, cfg.freq_ghz).amplitude);
      if (g > best) {
        best = g;
        result.dominant_arrival_azimuth = azimuth_of(p.arrival_dir);
      }
    }
  }
  return result;
}

SweepResult run_scenario(const Scene& scene, const ScenarioConfig& cfg, const RunOptions& opts) {
  switch (motion_of(cfg.scenario)) {
    case Motion::ue_and_ris:
      return run_scenario_a(scene, cfg, opts);
    case Motion::ris:
    case Motion::ue:
      return run_scenario_b(scene, cfg, opts);
    case Motion::grid:
      return run_scenario_c(scene, cfg, opts);
  }
  throw ConfigError("unhandled scenario");
}

int deep_fade_index(const SweepResult& result) {
  if (result.rows.empty()) throw DomainError("empty sweep");
  int best = 0;
  for (std::size_t i = 1; i < result.rows.size(); ++i)
    if (result.rows[i].report.p_los_dbm < result.rows[static_cast<std::size_t>(best)].report.p_los_dbm)
      best = static_cast<int>(i);
  return best;
}

std::vector<SizeRow> ris_size_sweep(const Scene& scene, const ScenarioConfig& cfg, const std::vector<int>& sizes,
                                    const Vec3& ue, const Vec3& ris_center) {
  if (!cfg.ris) throw ConfigError("size sweep needs a RIS");
  const Vec3 bs = at_height(cfg.bs, cfg.tx_height);
  TraceConfig tc = cfg.trace;
  if (motion_of(cfg.scenario) == Motion::grid) tc.max_diffractions = 0;
  const auto t = trace(scene, bs, ris_center, tc);
  const auto r = trace(scene, ris_center, ue, tc);
  std::vector<SizeRow> out;
  for (int n : sizes) {
    const RisPanel panel = make_panel(cfg, ris_center, n);
    const LinkGeometry link = assemble_link(scene, cfg.freq_ghz, {}, &panel, t, r, cfg.path_filter);
    SizeRow row;
    row.n_elements = n;
    const std::uint64_t seed = point_seed(cfg.seed, static_cast<std::uint64_t>(n));
    row.p_ris_optimal_dbm = received_power_dbm(cascade(link.ht, link.hr, optimal_coeffs(link.ht, link.hr)), cfg.ptx_dbm);
    row.p_ris_unit_dbm = received_power_dbm(cascade(link.ht, link.hr, unit_coeffs(n)), cfg.ptx_dbm);
    row.p_ris_random_dbm = received_power_dbm(cascade(link.ht, link.hr, random_coeffs(n, seed)), cfg.ptx_dbm);
    double mean = 0.0;
    for (int k = 0; k < cfg.random_trials; ++k)
      mean += std::norm(cascade(link.ht, link.hr, random_coeffs(n, point_seed(seed, static_cast<std::uint64_t>(k)))));
    row.p_ris_random_mean_dbm = power_dbm_from_linear(mean / cfg.random_trials, cfg.ptx_dbm);
    out.push_back(row);
  }
  return out;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out;
  const std::vector<std::string> power_cols = {"p_los_dbm",         "p_ris_dbm",          "p_total_dbm",
                                               "n_paths_los",       "n_paths_t",          "n_paths_r",
                                               "p_ris_optimal_dbm", "p_ris_unit_dbm",     "p_ris_random_mean_dbm",
                                               "p_ris_incoherent_dbm", "d_t_m",           "d_r_m"};
  std::vector<std::string> head;
  if (result.is_grid)
    head = {"index", "ix", "iy", "x", "y"};
  else
    head = {"index", "coord_m", "ue_x", "ue_y", "ris_x", "ris_y"};
  head.insert(head.end(), power_cols.begin(), power_cols.end());
  if (result.is_grid) {
    head.push_back("p_los_diff_dbm");
    head.push_back("n_paths_los_diff");
  }
  csv::append_row(out, head);
  for (const auto& r : result.rows) {
    std::vector<std::string> cells;
    cells.push_back(csv::number(r.index));
    if (result.is_grid) {
      cells.push_back(csv::number(r.ix));
      cells.push_back(csv::number(r.iy));
      cells.push_back(csv::number(r.ue.x()));
      cells.push_back(csv::number(r.ue.y()));
    } else {
      cells.push_back(csv::number(r.coord_m));
      cells.push_back(csv::number(r.ue.x()));
      cells.push_back(csv::number(r.ue.y()));
      cells.push_back(csv::number(r.ris.x()));
      cells.push_back(csv::number(r.ris.y()));
    }
    const auto& rep = r.report;
    for (double v : {rep.p_los_dbm, rep.p_ris_dbm, rep.p_total_dbm}) cells.push_back(csv::number(v));
    for (int v : {rep.n_paths_los, rep.n_paths_t, rep.n_paths_r}) cells.push_back(csv::number(v));
    for (double v : {r.p_ris_optimal_dbm, r.p_ris_unit_dbm, r.p_ris_random_mean_dbm, r.p_ris_incoherent_dbm, r.d_t,
                     r.d_r})
      cells.push_back(csv::number(v));
    if (result.is_grid) {
      cells.push_back(csv::number(r.diffraction ? r.diffraction->p_los_dbm : kNegInf));
      cells.push_back(csv::number(r.diffraction ? r.diffraction->n_paths_los : 0));
    }
    csv::append_row(out, cells);
  }
  return out;
}

std::string size_sweep_csv(const std::vector<SizeRow>& rows) {
  std::string out = "n_elements,p_ris_optimal_dbm,p_ris_unit_dbm,p_ris_random_dbm,p_ris_random_mean_dbm\n";
  for (const auto& r : rows)
    csv::append_row(out, {csv::number(r.n_elements), csv::number(r.p_ris_optimal_dbm), csv::number(r.p_ris_unit_dbm),
                          csv::number(r.p_ris_random_dbm), csv::number(r.p_ris_random_mean_dbm)});
  return out;
}

}  // namespace rtris
