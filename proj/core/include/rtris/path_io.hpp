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

// Text dumps of traced paths and RIS coefficients.

#include <span>
#include <string>

#include "rtris/ris.hpp"
#include "rtris/scene.hpp"
#include "rtris/tracer.hpp"

namespace rtris {

/// One row per path: path_id, interactions, length_m, aod_az, aod_el,
/// aoa_az, aoa_el (degrees; AoA points back towards where the wave came
/// from), gain_db, phase_rad.
std::string path_dump_csv(const Scene& scene, std::span<const PropagationPath> paths, double freq_ghz);

/// One row per element: element, row, col, phase_rad.
std::string coefficient_dump_csv(const RisPanel& panel, const RisCoefficients& coeffs);

}  // namespace rtris
