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

#include "rtris/geo.hpp"

#include <string>

#include "rtris/error.hpp"

namespace rtris {

void GeoAnchor::validate() const {
  if (!(latitude_deg >= -90.0 && latitude_deg <= 90.0))
    throw DomainError("latitude out of range: " + std::to_string(latitude_deg));
  if (!(longitude_deg >= -180.0 && longitude_deg <= 180.0))
    throw DomainError("longitude out of range: " + std::to_string(longitude_deg));
}

Vec2 geo_to_local(const GeoAnchor& anchor, const GeoAnchor& point) {
  anchor.validate();
  point.validate();
  const double dlat = point.latitude_deg - anchor.latitude_deg;
  const double dlon = point.longitude_deg - anchor.longitude_deg;
  if (std::abs(dlat) > kMaxLocalOffsetDeg || std::abs(dlon) > kMaxLocalOffsetDeg)
    throw DomainError("point too far from anchor for the equirectangular projection");
  const double east = dlon * std::cos(deg2rad(anchor.latitude_deg)) * kMetersPerDegree;
  const double north = dlat * kMetersPerDegree;
  return {east, north};
}

}  // namespace rtris
