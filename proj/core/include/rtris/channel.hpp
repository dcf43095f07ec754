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

#include <optional>
#include <span>
#include <vector>

#include "rtris/ris.hpp"
#include "rtris/scene.hpp"
#include "rtris/tracer.hpp"

namespace rtris {

/// Total channel h = h_los + h_ris and the corresponding received powers.
struct ChannelReport {
  cdouble h_los;
  cdouble h_ris;
  cdouble h_total;
  double p_los_dbm = 0.0;
  double p_ris_dbm = 0.0;
  double p_total_dbm = 0.0;
  int n_paths_los = 0;
  int n_paths_t = 0;
  int n_paths_r = 0;
};

/// ptx + 20 log10 |h|; -infinity when h = 0.
double received_power_dbm(cdouble h, double ptx_dbm);

/// Everything traced for one (tx, rx, panel) placement. Coefficient policies
/// are applied afterwards, so one geometry serves many policies.
struct LinkGeometry {
  cdouble h_los;
  int n_paths_los = 0;
  bool has_panel = false;
  SegmentChannel ht;  // tx -> metaatoms
  SegmentChannel hr;  // metaatoms -> rx
  int n_paths_t = 0;
  int n_paths_r = 0;
};

struct PolicySpec {
  CoefficientPolicy policy = CoefficientPolicy::optimal;
  std::uint64_t seed = 0;
};

/// Direct-channel paths: `filter` applied and paths crossing the panel removed.
std::vector<PropagationPath> direct_paths(const Scene& scene, std::vector<PropagationPath> paths,
                                          const RisPanel* panel, PathFilter filter);

/// Builds a LinkGeometry from traced paths. `tx_to_panel` ends at the panel
/// centre, `panel_to_rx` starts there; both are filtered with `filter`.
LinkGeometry assemble_link(const Scene& scene, double freq_ghz, std::span<const PropagationPath> los,
                           const RisPanel* panel, std::span<const PropagationPath> tx_to_panel,
                           std::span<const PropagationPath> panel_to_rx, PathFilter filter = PathFilter::all);

/// Coefficients for `spec` on this geometry (requires a panel).
RisCoefficients make_coefficients(const LinkGeometry& link, const PolicySpec& spec);

/// Report for given coefficients; nullptr or a panel-less link gives h_ris = 0.
ChannelReport make_report(const LinkGeometry& link, const RisCoefficients* coeffs, double ptx_dbm);

/// Traces every segment and evaluates the channel in one call.
ChannelReport evaluate(const Scene& scene, const Vec3& tx, const Vec3& rx, const RisPanel* panel,
                       const TraceConfig& cfg, const PolicySpec& policy, double freq_ghz, double ptx_dbm,
                       PathFilter filter = PathFilter::all);

}  // namespace rtris
