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


#include "rtris/channel.hpp"

#include <limits>

#include "rtris/em.hpp"
#include "rtris/error.hpp"

namespace rtris {

double received_power_dbm(cdouble h, double ptx_dbm) {
  const double mag = std::abs(h);
  if (mag == 0.0) return -std::numeric_limits<double>::infinity();
  return ptx_dbm + 20.0 * std::log10(mag);
}

std::vector<PropagationPath> direct_paths(const Scene& scene, std::vector<PropagationPath> paths,
                                          const RisPanel* panel, PathFilter filter) {
  paths = filter_paths(scene, std::move(paths), filter);
  if (panel) {
    std::erase_if(paths, [&](const PropagationPath& p) {
      for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i)
        if (panel->segment_crosses(p.vertices[i], p.vertices[i + 1])) return true;
      return false;
    });
  }
  return paths;
}

LinkGeometry assemble_link(const Scene& scene, double freq_ghz, std::span<const PropagationPath> los,
                           const RisPanel* panel, std::span<const PropagationPath> tx_to_panel,
                           std::span<const PropagationPath> panel_to_rx, PathFilter filter) {
  LinkGeometry link;
  link.h_los = coherent_sum(los, scene, freq_ghz);
  link.n_paths_los = static_cast<int>(los.size());
  if (!panel) return link;
  link.has_panel = true;
  const auto keep = [&](std::span<const PropagationPath> in) {
    return filter_paths(scene, std::vector<PropagationPath>(in.begin(), in.end()), filter);
  };
  const auto t = keep(tx_to_panel);
  const auto r = keep(panel_to_rx);
  link.ht = segment_channel(t, scene, *panel, freq_ghz, false);
  link.hr = segment_channel(r, scene, *panel, freq_ghz, true);
  link.n_paths_t = static_cast<int>(t.size());
  link.n_paths_r = static_cast<int>(r.size());
  return link;
}

RisCoefficients make_coefficients(const LinkGeometry& link, const PolicySpec& spec) {
  if (!link.has_panel) throw DomainError("coefficients requested for a link without a RIS");
  const int n = static_cast<int>(link.ht.size());
  switch (spec.policy) {
    case CoefficientPolicy::optimal:
      return optimal_coeffs(link.ht, link.hr);
    case CoefficientPolicy::unit:
      return unit_coeffs(n);
    case CoefficientPolicy::random:
      return random_coeffs(n, spec.seed);
  }
  return unit_coeffs(n);
}

ChannelReport make_report(const LinkGeometry& link, const RisCoefficients* coeffs, double ptx_dbm) {
  ChannelReport r;
  r.h_los = link.h_los;
  r.h_ris = (link.has_panel && coeffs) ? cascade(link.ht, link.hr, *coeffs) : cdouble(0.0);
  r.h_total = r.h_los + r.h_ris;
  r.p_los_dbm = received_power_dbm(r.h_los, ptx_dbm);
  r.p_ris_dbm = received_power_dbm(r.h_ris, ptx_dbm);
  r.p_total_dbm = received_power_dbm(r.h_total, ptx_dbm);
  r.n_paths_los = link.n_paths_los;
  r.n_paths_t = link.n_paths_t;
  r.n_paths_r = link.n_paths_r;
  return r;
}

ChannelReport evaluate(const Scene& scene, const Vec3& tx, const Vec3& rx, const RisPanel* panel,
                       const TraceConfig& cfg, const PolicySpec& policy, double freq_ghz, double ptx_dbm,
                       PathFilter filter) {
  const auto los = direct_paths(scene, trace(scene, tx, rx, cfg), panel, filter);
  if (!panel) return make_report(assemble_link(scene, freq_ghz, los, nullptr, {}, {}, filter), nullptr, ptx_dbm);
  panel->validate();
  const auto t = trace(scene, tx, panel->center, cfg);
  const auto r = trace(scene, panel->center, rx, cfg);
  const LinkGeometry link = assemble_link(scene, freq_ghz, los, panel, t, r, filter);
  const RisCoefficients c = make_coefficients(link, policy);
  return make_report(link, &c, ptx_dbm);
}

}  // namespace rtris
