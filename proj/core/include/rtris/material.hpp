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

#include <filesystem>
#include <map>
#include <string>

#include <json.hpp>

#include "rtris/geometry.hpp"

namespace rtris {

/// Building material following the ITU-R P.2040 power-law model:
///   eps'  = a * f^b
///   sigma = c * f^d   [S/m]
/// with f in GHz. The model is only defined on [fmin_ghz, fmax_ghz].
struct Material {
  std::string name;
  double eps_a = 1.0;
  double eps_b = 0.0;
  double sigma_c = 0.0;
  double sigma_d = 0.0;
  double fmin_ghz = 1.0;
  double fmax_ghz = 100.0;

  /// Throws DomainError on eps_a < 1, sigma_c < 0 or an empty frequency range.
  void validate() const;

  friend bool operator==(const Material&, const Material&) = default;
};

/// Conductivity sigma(f) in S/m. Throws DomainError outside the validity range.
double itu_conductivity(const Material& m, double freq_ghz);

/// Complex relative permittivity eps' - j eps'' with eps'' = 17.98 sigma / f.
/// Uses the exp(+j w t) time convention throughout the library, so passive
/// media have a non-positive imaginary part.
cdouble itu_permittivity(const Material& m, double freq_ghz);

Material material_from_json(const std::string& name, const nlohmann::json& j);
nlohmann::json material_to_json(const Material& m);

/// Named set of materials, typically read from `materials.json`.
class MaterialLibrary {
 public:
  MaterialLibrary() = default;

  static MaterialLibrary from_json(const nlohmann::json& j);
  static MaterialLibrary load(const std::filesystem::path& path);

  /// Library shipped in the data directory (materials.json).
  static const MaterialLibrary& defaults();

  void add(Material m);
  const Material* find(const std::string& name) const;
  const std::map<std::string, Material>& entries() const { return entries_; }

 private:
  std::map<std::string, Material> entries_;
};

/// Directory holding bundled materials, scenes and presets. Resolution order:
/// $RTRIS_DATA_DIR, the source tree (build-tree binaries), the install prefix.
std::filesystem::path data_directory();

}  // namespace rtris
