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

#include "outputs.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "rtris/analysis.hpp"
#include "rtris/csv.hpp"
#include "rtris/error.hpp"

namespace rtris::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_atomically(const fs::path& target, const std::string& content) {
  const fs::path tmp = target.parent_path() / ("." + target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw Error("cannot rename " + tmp.string() + ": " + ec.message());
}

std::vector<double> differences(const SweepResult& result) {
  std::vector<double> d;
  for (const auto& r : result.rows) {
    const double v = r.report.p_los_dbm - r.report.p_ris_dbm;
    if (std::isfinite(v)) d.push_back(v);
  }
  return d;
}

double normal_cdf(double x, double mean, double sigma) {
  return 0.5 * std::erfc(-(x - mean) / (sigma * std::sqrt(2.0)));
}

double variance(const std::vector<double>& y) {
  double m = 0.0;
  for (double v : y) m += v;
  m /= static_cast<double>(y.size());
  double s = 0.0;
  for (double v : y) s += (v - m) * (v - m);
  return s;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

void OutputSet::commit(const fs::path& dir, const std::string& manifest_name, const std::string& manifest) const {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  for (const auto& [name, content] : files_) write_atomically(dir / name, content);
  write_atomically(dir / manifest_name, manifest);
}

std::vector<std::string> OutputSet::names() const {
  std::vector<std::string> n;
  for (const auto& [name, content] : files_) n.push_back(name);
  return n;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json analysis_summary(const SweepResult& result, const ScenarioConfig& cfg) {
  json j;
  j["scenario"] = to_string(result.kind);
  j["rows"] = result.rows.size();

  if (!result.is_grid && !result.rows.empty()) {
    const int df = deep_fade_index(result);
    const auto& row = result.rows[static_cast<std::size_t>(df)];
    j["deep_fade"] = {{"index", df}, {"coord_m", row.coord_m}, {"p_los_dbm", number_or_null(row.report.p_los_dbm)}};
  }

  const auto diff = differences(result);
  if (!diff.empty()) {
    const Ecdf e = ecdf(diff);
    json d = {{"samples", diff.size()},
              {"p_le_3db", e(3.0)},
              {"p_le_0db", e(0.0)},
              {"median_db", e.sorted()[e.size() / 2]}};
    if (diff.size() >= 3 && e.sorted().front() < e.sorted().back()) {
      const FitResult g = fit_gaussian_cdf(e);
      d["gaussian_fit"] = {{"mean_db", g.coefficients[0]}, {"sigma_db", g.coefficients[1]}, {"rss", g.rss}};
    }
    j["los_minus_ris"] = d;
  }

  const Motion motion = motion_of(result.kind);
  if ((motion == Motion::ris || motion == Motion::ue) && result.rows.size() >= 6) {
    std::vector<double> x, dt, dr, p;
    for (const auto& r : result.rows) {
      if (!std::isfinite(r.p_ris_optimal_dbm)) continue;
      x.push_back(r.coord_m);
      dt.push_back(r.d_t);
      dr.push_back(r.d_r);
      p.push_back(std::pow(10.0, r.p_ris_optimal_dbm / 10.0));
    }
    if (p.size() >= 6) {
      const double var = variance(p);
      const FitResult inv = fit_inverse_distance_product(dt, dr, p);
      const FitResult quartic = fit_polynomial(x, p, 4);
      std::size_t best = 0;
      for (std::size_t i = 1; i < p.size(); ++i)
        if (p[i] > p[best]) best = i;
      j["placement"] = {{"inverse_distance_k", inv.coefficients[0]},
                        {"inverse_distance_residual_fraction", var > 0.0 ? inv.rss / var : 0.0},
                        {"quartic_coefficients_mw", quartic.coefficients},
                        {"quartic_residual_fraction", var > 0.0 ? quartic.rss / var : 0.0},
                        {"max_power_coord_m", x[best]}};
    }
  }

  if (result.is_grid && !result.rows.empty()) {
    std::vector<double> ris_lin;
    double min_go = std::numeric_limits<double>::infinity();
    double min_diff = min_go;
    int los_rows = 0;
    for (const auto& r : result.rows) {
      ris_lin.push_back(std::isfinite(r.report.p_ris_dbm) ? std::pow(10.0, r.report.p_ris_dbm / 10.0) : 0.0);
      min_go = std::min(min_go, r.report.p_los_dbm);
      if (r.diffraction) min_diff = std::min(min_diff, r.diffraction->p_los_dbm);
      if (r.report.n_paths_los > 0) ++los_rows;
    }
    const double orientation =
        fringe_normal_orientation(ris_lin, result.nx, result.ny, result.grid_spacing_m, result.grid_spacing_m);
    j["coverage"] = {
        {"nx", result.nx},
        {"ny", result.ny},
        {"spacing_m", result.grid_spacing_m},
        {"ris_fringe_normal_deg", rad2deg(orientation)},
        {"dominant_arrival_azimuth_deg", rad2deg(result.dominant_arrival_azimuth)},
        {"fringe_alignment_error_deg", rad2deg(axial_difference(orientation, result.dominant_arrival_azimuth))},
        {"min_p_los_dbm", number_or_null(min_go)},
        {"min_p_los_diff_dbm", number_or_null(min_diff)},
        {"points_with_direct_paths", los_rows}};
  }
  j["ptx_dbm"] = cfg.ptx_dbm;
  return j;
}

std::string difference_ecdf_csv(const SweepResult& result) {
  std::string out = "diff_db,ecdf,gaussian_fit_cdf\n";
  const auto diff = differences(result);
  if (diff.empty()) return out;
  const Ecdf e = ecdf(diff);
  double mean = std::numeric_limits<double>::quiet_NaN(), sigma = mean;
  if (diff.size() >= 3 && e.sorted().front() < e.sorted().back()) {
    const FitResult g = fit_gaussian_cdf(e);
    mean = g.coefficients[0];
    sigma = g.coefficients[1];
  }
  for (double x : e.sorted())
    csv::append_row(out, {csv::number(x), csv::number(e(x)), csv::number(normal_cdf(x, mean, sigma))});
  return out;
}

std::string policy_samples_csv(const SweepResult& result, double ptx_dbm) {
  std::string out = "index,trial,p_ris_random_dbm\n";
  for (std::size_t i = 0; i < result.random_power_samples.size(); ++i) {
    const auto& s = result.random_power_samples[i];
    for (std::size_t t = 0; t < s.size(); ++t)
      csv::append_row(out, {csv::number(static_cast<long long>(i)), csv::number(static_cast<long long>(t)),
                            csv::number(received_power_dbm(std::sqrt(s[t]), ptx_dbm))});
  }
  return out;
}

}  // namespace rtris::cli
