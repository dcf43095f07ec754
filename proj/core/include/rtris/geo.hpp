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

#include "rtris/geometry.hpp"

namespace rtris {

/// WGS-84 reference point of a scene (degrees).
struct GeoAnchor {
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;

  /// Throws DomainError unless latitude is in [-90, 90] and longitude in [-180, 180].
  void validate() const;

  friend bool operator==(const GeoAnchor&, const GeoAnchor&) = default;
};

inline constexpr double kMetersPerDegree = 111320.0;

/// Largest |delta lat| or |delta lon| accepted by geo_to_local, degrees.
inline constexpr double kMaxLocalOffsetDeg = 0.1;

/// Equirectangular projection of `point` into the east/north plane anchored at
/// `anchor`. Throws DomainError if the point is further than kMaxLocalOffsetDeg
/// from the anchor in either coordinate.
Vec2 geo_to_local(const GeoAnchor& anchor, const GeoAnchor& point);

}  // namespace rtris
