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

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace rtris {

// Local east-north-up frame, meters. Azimuths are measured from east towards
// north (counter-clockwise seen from above), elevations from the horizon.
using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using cdouble = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

inline double wavelength(double freq_ghz) { return kSpeedOfLight / (freq_ghz * 1e9); }
inline double wavenumber(double freq_ghz) { return kTwoPi / wavelength(freq_ghz); }

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Wraps an angle to [-pi, pi).
inline double wrap_phase(double angle) {
  double w = std::fmod(angle + kPi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  w -= kPi;
  // fmod can land exactly on +pi after the shift back for inputs a hair
  // below an odd multiple of pi.
  return w >= kPi ? -kPi : w;
}

/// Unit vector from azimuth/elevation (radians).
inline Vec3 direction_from_angles(double azimuth, double elevation) {
  return {std::cos(elevation) * std::cos(azimuth), std::cos(elevation) * std::sin(azimuth),
          std::sin(elevation)};
}

inline double azimuth_of(const Vec3& d) { return std::atan2(d.y(), d.x()); }
inline double elevation_of(const Vec3& d) {
  return std::atan2(d.z(), std::hypot(d.x(), d.y()));
}

/// Oriented plane n . x = offset with unit normal n.
struct Plane {
  Vec3 normal;
  double offset = 0.0;

  double signed_distance(const Vec3& p) const { return normal.dot(p) - offset; }
  Vec3 mirror(const Vec3& p) const { return p - 2.0 * signed_distance(p) * normal; }
};

/// Specular reflection of a direction about a unit normal.
inline Vec3 reflect_direction(const Vec3& d, const Vec3& n) { return d - 2.0 * d.dot(n) * n; }

}  // namespace rtris
