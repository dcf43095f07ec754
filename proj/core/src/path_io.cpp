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


#include "rtris/path_io.hpp"

#include "rtris/csv.hpp"
#include "rtris/em.hpp"
#include "rtris/error.hpp"

namespace rtris {

std::string path_dump_csv(const Scene& scene, std::span<const PropagationPath> paths, double freq_ghz) {
  std::string out = "path_id,interactions,length_m,aod_az,aod_el,aoa_az,aoa_el,gain_db,phase_rad\n";
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& p = paths[i];
    const cdouble g = path_gain(p, scene, freq_ghz).amplitude;
    const Vec3 aoa = -p.arrival_dir;
    const double mag = std::abs(g);
    csv::append_row(out, {csv::number(i), csv::field(interaction_string(scene, p)), csv::number(p.length),
                          csv::number(rad2deg(azimuth_of(p.departure_dir))),
                          csv::number(rad2deg(elevation_of(p.departure_dir))), csv::number(rad2deg(azimuth_of(aoa))),
                          csv::number(rad2deg(elevation_of(aoa))),
                          csv::number(mag > 0.0 ? 20.0 * std::log10(mag) : -INFINITY),
                          csv::number(std::arg(g))});
  }
  return out;
}

std::string coefficient_dump_csv(const RisPanel& panel, const RisCoefficients& coeffs) {
  if (coeffs.phases.size() != static_cast<std::size_t>(panel.size()))
    throw DomainError("coefficient count does not match the panel");
  std::string out = "element,row,col,phase_rad\n";
  for (int n = 0; n < panel.size(); ++n)
    csv::append_row(out, {csv::number(n), csv::number(n / panel.cols), csv::number(n % panel.cols),
                          csv::number(coeffs.phases[static_cast<std::size_t>(n)])});
  return out;
}

}  // namespace rtris
