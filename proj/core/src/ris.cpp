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


#include "rtris/ris.hpp"

#include <random>

#include "rtris/em.hpp"
#include "rtris/error.hpp"
#include "rtris/tracer.hpp"

namespace rtris {

Vec3 RisPanel::normal() const {
  const double ct = std::cos(elevation_tilt);
  return {ct * std::cos(boresight_azimuth), ct * std::sin(boresight_azimuth), std::sin(elevation_tilt)};
}

Vec3 RisPanel::column_axis() const { return {-std::sin(boresight_azimuth), std::cos(boresight_azimuth), 0.0}; }

Vec3 RisPanel::row_axis() const { return normal().cross(column_axis()); }

std::vector<Vec3> RisPanel::element_offsets() const {
  const Vec3 u = column_axis();
  const Vec3 v = row_axis();
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(size()));
  const double r0 = 0.5 * (rows - 1);
  const double c0 = 0.5 * (cols - 1);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) out.push_back(((c - c0) * spacing) * u + ((r - r0) * spacing) * v);
  return out;
}

bool RisPanel::segment_crosses(const Vec3& a, const Vec3& b) const {
  const Vec3 n = normal();
  const double da = n.dot(a - center);
  const double db = n.dot(b - center);
  if ((da > 0.0) == (db > 0.0) || da == db) return false;
  const Vec3 p = a + (da / (da - db)) * (b - a) - center;
  return std::abs(p.dot(column_axis())) <= 0.5 * cols * spacing &&
         std::abs(p.dot(row_axis())) <= 0.5 * rows * spacing;
}

void RisPanel::validate() const {
  if (rows < 1 || cols < 1) throw ConfigError("RIS needs at least one row and one column");
  if (!(spacing > 0.0)) throw ConfigError("RIS element spacing must be positive");
  if (!center.allFinite()) throw ConfigError("RIS centre is not finite");
}

RisPanel RisPanel::square(const Vec3& center, double boresight_azimuth, double elevation_tilt, int n_elements,
                          double freq_ghz) {
  const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n_elements))));
  if (n_elements < 1 || side * side != n_elements)
    throw ConfigError("square RIS size must be a perfect square, got " + std::to_string(n_elements));
  RisPanel p;
  p.center = center;
  p.boresight_azimuth = boresight_azimuth;
  p.elevation_tilt = elevation_tilt;
  p.rows = side;
  p.cols = side;
  p.spacing = 0.5 * wavelength(freq_ghz);
  return p;
}

CoefficientPolicy parse_policy(std::string_view name) {
  if (name == "optimal") return CoefficientPolicy::optimal;
  if (name == "unit") return CoefficientPolicy::unit;
  if (name == "random") return CoefficientPolicy::random;
  throw ConfigError("unknown coefficient policy '" + std::string(name) + "'");
}

std::string to_string(CoefficientPolicy policy) {
  switch (policy) {
    case CoefficientPolicy::optimal:
      return "optimal";
    case CoefficientPolicy::unit:
      return "unit";
    case CoefficientPolicy::random:
      return "random";
  }
  return "unit";
}

std::vector<cdouble> steering_phase(const RisPanel& panel, const Vec3& direction, double freq_ghz) {
  const double k = wavenumber(freq_ghz);
  const auto offsets = panel.element_offsets();
  std::vector<cdouble> out;
  out.reserve(offsets.size());
  for (const auto& p : offsets) out.push_back(std::polar(1.0, k * p.dot(direction)));
  return out;
}

double element_pattern(const RisPanel& panel, const Vec3& direction) {
  return direction.dot(panel.normal()) > 0.0 ? 1.0 : 0.0;
}

SegmentChannel segment_channel(std::span<const cdouble> gains, std::span<const Vec3> directions,
                               const RisPanel& panel, double freq_ghz) {
  if (gains.size() != directions.size()) throw DomainError("gain and direction counts differ");
  SegmentChannel ch;
  ch.per_element.assign(static_cast<std::size_t>(panel.size()), 0.0);
  for (std::size_t i = 0; i < gains.size(); ++i) {
    const Vec3 u = directions[i].normalized();
    const bool front = element_pattern(panel, u) > 0.0;
    ch.arrivals.push_back({gains[i], u, front});
    if (!front) continue;
    const auto sv = steering_phase(panel, u, freq_ghz);
    for (std::size_t n = 0; n < sv.size(); ++n) ch.per_element[n] += gains[i] * sv[n];
  }
  return ch;
}

SegmentChannel segment_channel(std::span<const PropagationPath> paths, const Scene& scene, const RisPanel& panel,
                               double freq_ghz, bool panel_is_source) {
  std::vector<cdouble> gains;
  std::vector<Vec3> dirs;
  gains.reserve(paths.size());
  dirs.reserve(paths.size());
  for (const auto& p : paths) {
    gains.push_back(path_gain(p, scene, freq_ghz).amplitude);
    dirs.push_back(panel_is_source ? p.departure_dir : Vec3(-p.arrival_dir));
  }
  return segment_channel(gains, dirs, panel, freq_ghz);
}

RisCoefficients optimal_coeffs(std::span<const cdouble> ht, std::span<const cdouble> hr) {
  if (ht.size() != hr.size()) throw DomainError("segment channel lengths differ");
  RisCoefficients c;
  c.policy = CoefficientPolicy::optimal;
  c.phases.resize(ht.size());
  for (std::size_t n = 0; n < ht.size(); ++n) {
    if (ht[n] == 0.0 || hr[n] == 0.0) {
      c.phases[n] = 0.0;
      continue;
    }
    c.phases[n] = wrap_phase(-(std::arg(hr[n]) + std::arg(ht[n])));
  }
  return c;
}

RisCoefficients optimal_coeffs(const SegmentChannel& ht, const SegmentChannel& hr) {
  return optimal_coeffs(ht.per_element, hr.per_element);
}

RisCoefficients unit_coeffs(int n) {
  if (n < 1) throw DomainError("coefficient count must be positive");
  RisCoefficients c;
  c.policy = CoefficientPolicy::unit;
  c.phases.assign(static_cast<std::size_t>(n), 0.0);
  return c;
}

RisCoefficients random_coeffs(int n, std::uint64_t seed) {
  if (n < 1) throw DomainError("coefficient count must be positive");
  RisCoefficients c;
  c.policy = CoefficientPolicy::random;
  c.seed = seed;
  c.phases.resize(static_cast<std::size_t>(n));
  std::mt19937_64 gen(seed);
  // 53-bit uniform on [0, 1) built by hand: the standard distributions are
  // not bit-reproducible across library implementations.
  for (auto& p : c.phases) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    p = -kPi + kTwoPi * u;
  }
  return c;
}

cdouble cascade(std::span<const cdouble> ht, std::span<const cdouble> hr, std::span<const double> phases) {
  if (ht.size() != hr.size() || ht.size() != phases.size())
    throw DomainError("cascade inputs have different lengths");
  cdouble sum = 0.0;
  for (std::size_t n = 0; n < ht.size(); ++n) sum += hr[n] * std::polar(1.0, phases[n]) * ht[n];
  return sum;
}

cdouble cascade(const SegmentChannel& ht, const SegmentChannel& hr, const RisCoefficients& coeffs) {
  return cascade(ht.per_element, hr.per_element, coeffs.phases);
}

std::uint64_t point_seed(std::uint64_t master, std::uint64_t index) {
  auto splitmix = [](std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  };
  return splitmix(master ^ splitmix(index));
}

}  // namespace rtris
