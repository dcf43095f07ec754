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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rtris/geometry.hpp"

namespace rtris {

class Scene;
struct PropagationPath;

/// Planar RIS: rows x cols metaatoms on a square lattice centred on `center`.
///
/// The boresight (panel normal) points at azimuth `boresight_azimuth` and is
/// raised by `elevation_tilt` above the horizon. Columns run along the
/// horizontal in-plane axis u, rows along v = normal x u.
struct RisPanel {
  Vec3 center = Vec3::Zero();
  double boresight_azimuth = 0.0;
  double elevation_tilt = deg2rad(-3.0);
  int rows = 32;
  int cols = 32;
  double spacing = 0.0;  // meters

  int size() const { return rows * cols; }
  Vec3 normal() const;
  Vec3 column_axis() const;
  Vec3 row_axis() const;
  /// Element offsets from the centre; element n = row * cols + col.
  std::vector<Vec3> element_offsets() const;
  /// True when the open segment a-b passes through the panel rectangle.
  bool segment_crosses(const Vec3& a, const Vec3& b) const;
  /// Throws ConfigError for non-positive sizes or spacing.
  void validate() const;

  /// Square panel of N elements at half-wavelength pitch. Throws ConfigError
  /// if N is not a perfect square.
  static RisPanel square(const Vec3& center, double boresight_azimuth, double elevation_tilt, int n_elements,
                         double freq_ghz);
};

enum class CoefficientPolicy { optimal, unit, random };

CoefficientPolicy parse_policy(std::string_view name);
std::string to_string(CoefficientPolicy policy);

struct RisCoefficients {
  std::vector<double> phases;  // radians in [-pi, pi)
  CoefficientPolicy policy = CoefficientPolicy::unit;
  std::uint64_t seed = 0;  // random policy only
};

/// Channel between one end point and every metaatom.
struct SegmentChannel {
  struct Arrival {
    cdouble gain;    // path gain at the panel centre
    Vec3 direction;  // unit, from the panel towards the far end point
    bool accepted;   // false when it reaches the back of the panel
  };
  std::vector<cdouble> per_element;
  std::vector<Arrival> arrivals;

  std::size_t size() const { return per_element.size(); }
};

/// e^{j k p_n . direction} for each element offset p_n.
std::vector<cdouble> steering_phase(const RisPanel& panel, const Vec3& direction, double freq_ghz);

/// Half-isotropic metaatom: 1 on the boresight hemisphere, 0 elsewhere.
double element_pattern(const RisPanel& panel, const Vec3& direction);

/// Per-element channel from path gains at the centre and their directions
/// (unit vectors pointing from the panel towards the far end point).
SegmentChannel segment_channel(std::span<const cdouble> gains, std::span<const Vec3> directions,
                               const RisPanel& panel, double freq_ghz);

/// Per-element channel from traced paths that start or end at the panel
/// centre. `panel_is_source` selects which end of each path is the panel.
SegmentChannel segment_channel(std::span<const PropagationPath> paths, const Scene& scene, const RisPanel& panel,
                               double freq_ghz, bool panel_is_source);

/// Phases that align every cascade term: psi_n = -(arg hr_n + arg ht_n),
/// wrapped to [-pi, pi). Elements with a zero term get 0.
RisCoefficients optimal_coeffs(const SegmentChannel& ht, const SegmentChannel& hr);
RisCoefficients optimal_coeffs(std::span<const cdouble> ht, std::span<const cdouble> hr);

RisCoefficients unit_coeffs(int n);

/// Independent uniform phases on [-pi, pi) from a 64-bit Mersenne twister.
RisCoefficients random_coeffs(int n, std::uint64_t seed);

/// Sum over elements of hr_n e^{j psi_n} ht_n. Throws DomainError on length mismatch.
cdouble cascade(std::span<const cdouble> ht, std::span<const cdouble> hr, std::span<const double> phases);
cdouble cascade(const SegmentChannel& ht, const SegmentChannel& hr, const RisCoefficients& coeffs);

/// Derived seed for sweep point `index`, independent of evaluation order.
std::uint64_t point_seed(std::uint64_t master, std::uint64_t index);

}  // namespace rtris
