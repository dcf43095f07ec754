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

#include "rtris/material.hpp"

#include <cstdlib>
#include <fstream>

#include "rtris/error.hpp"

namespace rtris {

void Material::validate() const {
  if (!(eps_a >= 1.0)) throw DomainError("material '" + name + "': eps_a must be >= 1");
  if (!(sigma_c >= 0.0)) throw DomainError("material '" + name + "': sigma_c must be >= 0");
  if (!(fmin_ghz > 0.0 && fmax_ghz >= fmin_ghz))
    throw DomainError("material '" + name + "': invalid frequency range");
}

double itu_conductivity(const Material& m, double freq_ghz) {
  if (!(freq_ghz >= m.fmin_ghz && freq_ghz <= m.fmax_ghz))
    throw DomainError("frequency " + std::to_string(freq_ghz) + " GHz outside validity range of '" +
                      m.name + "' [" + std::to_string(m.fmin_ghz) + ", " +
                      std::to_string(m.fmax_ghz) + "]");
  if (m.sigma_c == 0.0) return 0.0;
  return m.sigma_c * std::pow(freq_ghz, m.sigma_d);
}

cdouble itu_permittivity(const Material& m, double freq_ghz) {
  const double sigma = itu_conductivity(m, freq_ghz);
  const double eps_real = m.eps_a * std::pow(freq_ghz, m.eps_b);
  const double eps_imag = 17.98 * sigma / freq_ghz;
  return {eps_real, -eps_imag};
}

Material material_from_json(const std::string& name, const nlohmann::json& j) {
  Material m;
  m.name = name;
  try {
    m.eps_a = j.at("a").get<double>();
    m.eps_b = j.at("b").get<double>();
    m.sigma_c = j.at("c").get<double>();
    m.sigma_d = j.at("d").get<double>();
    m.fmin_ghz = j.at("fmin_ghz").get<double>();
    m.fmax_ghz = j.at("fmax_ghz").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw SceneError("material '" + name + "': " + e.what());
  }
  try {
    m.validate();
  } catch (const DomainError& e) {
    throw SceneError(e.what());
  }
  return m;
}

nlohmann::json material_to_json(const Material& m) {
  return {{"a", m.eps_a},       {"b", m.eps_b},       {"c", m.sigma_c},
          {"d", m.sigma_d},     {"fmin_ghz", m.fmin_ghz}, {"fmax_ghz", m.fmax_ghz}};
}

MaterialLibrary MaterialLibrary::from_json(const nlohmann::json& j) {
  MaterialLibrary lib;
  const auto& mats = j.contains("materials") ? j.at("materials") : j;
  if (!mats.is_object()) throw SceneError("material library must be a JSON object");
  for (const auto& [name, value] : mats.items()) lib.add(material_from_json(name, value));
  return lib;
}

MaterialLibrary MaterialLibrary::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SceneError("cannot open material file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SceneError("material file " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

const MaterialLibrary& MaterialLibrary::defaults() {
  static const MaterialLibrary lib = [] {
    const auto path = data_directory() / "materials.json";
    if (!std::filesystem::exists(path)) return MaterialLibrary{};
    return load(path);
  }();
  return lib;
}

void MaterialLibrary::add(Material m) {
  const std::string key = m.name;
  entries_.insert_or_assign(key, std::move(m));
}

const Material* MaterialLibrary::find(const std::string& name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

std::filesystem::path data_directory() {
  if (const char* env = std::getenv("RTRIS_DATA_DIR"); env && *env) return env;
#ifdef RTRIS_SOURCE_DATA_DIR
  if (std::filesystem::exists(RTRIS_SOURCE_DATA_DIR)) return RTRIS_SOURCE_DATA_DIR;
#endif
#ifdef RTRIS_INSTALL_DATA_DIR
  return RTRIS_INSTALL_DATA_DIR;
#else
  return "data";
#endif
}

}  // namespace rtris
