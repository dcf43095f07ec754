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


#include <fstream>
#include <set>

#include "rtris/error.hpp"
#include "rtris/scenarios.hpp"

namespace rtris {

using nlohmann::json;

namespace {

struct KindName {
  ScenarioKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {ScenarioKind::a, "A"},
    {ScenarioKind::b, "B"},
    {ScenarioKind::b_variant_ue, "B-variant-UE"},
    {ScenarioKind::c, "C"},
    {ScenarioKind::free_space_a, "free-space-A"},
    {ScenarioKind::free_space_b, "free-space-B"},
    {ScenarioKind::two_ray_a, "two-ray-A"},
};

Vec2 vec2_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(std::string(what) + " must be a [x, y] array of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

json vec2_to(const Vec2& v) { return json::array({v.x(), v.y()}); }

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items())
    if (!ok.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

template <class T>
void read(const json& obj, const char* key, T& out) {
  if (auto it = obj.find(key); it != obj.end()) out = it->get<T>();
}

}  // namespace

ScenarioKind parse_scenario(const std::string& name) {
  for (const auto& kn : kKindNames)
    if (name == kn.name) return kn.kind;
  throw ConfigError("unknown scenario '" + name + "'");
}

std::string to_string(ScenarioKind kind) {
  for (const auto& kn : kKindNames)
    if (kn.kind == kind) return kn.name;
  return "A";
}

Motion motion_of(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::a:
    case ScenarioKind::free_space_a:
    case ScenarioKind::two_ray_a:
      return Motion::ue_and_ris;
    case ScenarioKind::b:
    case ScenarioKind::free_space_b:
      return Motion::ris;
    case ScenarioKind::b_variant_ue:
      return Motion::ue;
    case ScenarioKind::c:
      return Motion::grid;
  }
  return Motion::ue_and_ris;
}

ScenarioConfig ScenarioConfig::defaults(ScenarioKind kind) {
  ScenarioConfig c;
  c.scenario = kind;
  switch (kind) {
    case ScenarioKind::free_space_a:
    case ScenarioKind::free_space_b:
      c.scene = "ground";
      c.trace.max_reflections = 0;
      break;
    case ScenarioKind::two_ray_a:
      c.scene = "ground";
      c.trace.max_reflections = 1;
      c.path_filter = PathFilter::los_and_ground;
      break;
    case ScenarioKind::c:
      c.n_elements = 1600;
      break;
    default:
      break;
  }
  return c;
}

void ScenarioConfig::validate() const {
  if (preset_version != 1) throw ConfigError("unsupported preset_version " + std::to_string(preset_version));
  if (!(freq_ghz > 0.0)) throw ConfigError("freq_ghz must be positive");
  if (!std::isfinite(ptx_dbm)) throw ConfigError("ptx_dbm must be finite");
  if (!(tx_height > 0.0) || !(ue_height > 0.0) || !(ris_height > 0.0))
    throw ConfigError("antenna heights must be positive");
  if (!(std::abs(tilt_deg) < 90.0)) throw ConfigError("tilt_deg must lie in (-90, 90)");
  if (n_elements < 1) throw ConfigError("n_elements must be positive");
  if (random_trials < 1) throw ConfigError("random_trials must be positive");
  trace.validate();
  if (sweep.steps < 0) throw ConfigError("sweep.steps must be non-negative");
  if (!(sweep.step_m > 0.0)) throw ConfigError("sweep.step_m must be positive");
  if (!(sweep.axis.norm() > 0.0)) throw ConfigError("sweep.axis must be non-zero");
  if (grid.nx < 1 || grid.ny < 1) throw ConfigError("grid dimensions must be positive");
  if (!(grid.spacing_wavelengths > 0.0)) throw ConfigError("grid.spacing_wavelengths must be positive");
  const Motion m = motion_of(scenario);
  if ((m == Motion::ris) && !ris) throw ConfigError("scenario " + to_string(scenario) + " needs a RIS");
  if (size_sweep) {
    if (size_sweep->sizes.empty()) throw ConfigError("size_sweep.sizes is empty");
    if (!ris) throw ConfigError("size_sweep needs a RIS");
    for (int n : size_sweep->sizes) {
      const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
      if (n < 1 || side * side != n) throw ConfigError("size_sweep sizes must be perfect squares");
    }
    if (size_sweep->point != "df1") {
      std::size_t pos = 0;
      int idx = -1;
      try {
        idx = std::stoi(size_sweep->point, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != size_sweep->point.size() || idx < 0 || (m != Motion::grid && idx > sweep.steps))
        throw ConfigError("size_sweep.point must be \"df1\" or a row index");
    }
  }
  {
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n_elements))));
    if (side * side != n_elements) throw ConfigError("n_elements must be a perfect square for a square RIS");
  }
}

ScenarioConfig scenario_from_json(const json& doc) {
  try {
    reject_unknown(doc,
                   {"preset_version", "scenario", "scene", "ground_material", "freq_ghz", "ptx_dbm", "tx_height",
                    "ue_height", "ris_height", "tilt_deg", "n_elements", "policy", "seed", "random_trials",
                    "path_filter", "trace", "bs", "ue", "ris", "sweep", "grid", "size_sweep", "description"},
                   "config");
    if (!doc.contains("scenario")) throw ConfigError("config is missing 'scenario'");
    ScenarioConfig c = ScenarioConfig::defaults(parse_scenario(doc.at("scenario").get<std::string>()));
    read(doc, "preset_version", c.preset_version);
    read(doc, "scene", c.scene);
    read(doc, "ground_material", c.ground_material);
    read(doc, "freq_ghz", c.freq_ghz);
    read(doc, "ptx_dbm", c.ptx_dbm);
    read(doc, "tx_height", c.tx_height);
    read(doc, "ue_height", c.ue_height);
    read(doc, "ris_height", c.ris_height);
    read(doc, "tilt_deg", c.tilt_deg);
    read(doc, "n_elements", c.n_elements);
    read(doc, "random_trials", c.random_trials);
    if (doc.contains("seed")) {
      const auto& s = doc.at("seed");
      if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() && s.get<long long>() < 0))
        throw ConfigError("seed must be a non-negative integer");
      c.seed = s.get<std::uint64_t>();
    }
    if (doc.contains("policy")) c.policy = parse_policy(doc.at("policy").get<std::string>());
    if (doc.contains("path_filter")) c.path_filter = parse_path_filter(doc.at("path_filter").get<std::string>());
    if (doc.contains("trace")) {
      const auto& t = doc.at("trace");
      reject_unknown(t,
                     {"max_reflections", "max_diffractions", "angular_resolution_deg", "dedup_tolerance",
                      "diffraction_side_reflections", "reception_factor"},
                     "trace");
      read(t, "max_reflections", c.trace.max_reflections);
      read(t, "max_diffractions", c.trace.max_diffractions);
      if (t.contains("angular_resolution_deg"))
        c.trace.angular_resolution = deg2rad(t.at("angular_resolution_deg").get<double>());
      read(t, "dedup_tolerance", c.trace.dedup_tolerance);
      read(t, "diffraction_side_reflections", c.trace.diffraction_side_reflections);
      read(t, "reception_factor", c.trace.reception_factor);
    }
    if (doc.contains("bs")) c.bs = vec2_from(doc.at("bs"), "bs");
    if (doc.contains("ue")) c.ue = vec2_from(doc.at("ue"), "ue");
    if (doc.contains("ris")) {
      const auto& r = doc.at("ris");
      if (r.is_null()) {
        c.ris.reset();
      } else {
        reject_unknown(r, {"position", "azimuth_deg"}, "ris");
        RisPlacement p;
        if (!r.contains("position")) throw ConfigError("ris.position is required");
        p.position = vec2_from(r.at("position"), "ris.position");
        read(r, "azimuth_deg", p.azimuth_deg);
        c.ris = p;
      }
    }
    if (doc.contains("sweep")) {
      const auto& s = doc.at("sweep");
      reject_unknown(s, {"axis", "step_m", "steps"}, "sweep");
      if (s.contains("axis")) c.sweep.axis = vec2_from(s.at("axis"), "sweep.axis");
      read(s, "step_m", c.sweep.step_m);
      read(s, "steps", c.sweep.steps);
    }
    if (doc.contains("grid")) {
      const auto& g = doc.at("grid");
      reject_unknown(g, {"nx", "ny", "spacing_wavelengths", "center"}, "grid");
      read(g, "nx", c.grid.nx);
      read(g, "ny", c.grid.ny);
      read(g, "spacing_wavelengths", c.grid.spacing_wavelengths);
      if (g.contains("center")) c.grid.center = vec2_from(g.at("center"), "grid.center");
    }
    if (doc.contains("size_sweep")) {
      const auto& s = doc.at("size_sweep");
      if (s.is_null()) {
        c.size_sweep.reset();
      } else {
        reject_unknown(s, {"sizes", "point"}, "size_sweep");
        SizeSweepSpec ss;
        read(s, "sizes", ss.sizes);
        if (s.contains("point")) {
          const auto& p = s.at("point");
          ss.point = p.is_number_integer() ? std::to_string(p.get<long long>()) : p.get<std::string>();
        }
        c.size_sweep = ss;
      }
    }
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config type error: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

json to_json(const ScenarioConfig& c) {
  json j;
  j["preset_version"] = c.preset_version;
  j["scenario"] = to_string(c.scenario);
  j["scene"] = c.scene;
  j["ground_material"] = c.ground_material;
  j["freq_ghz"] = c.freq_ghz;
  j["ptx_dbm"] = c.ptx_dbm;
  j["tx_height"] = c.tx_height;
  j["ue_height"] = c.ue_height;
  j["ris_height"] = c.ris_height;
  j["tilt_deg"] = c.tilt_deg;
  j["n_elements"] = c.n_elements;
  j["policy"] = to_string(c.policy);
  j["seed"] = c.seed;
  j["random_trials"] = c.random_trials;
  j["path_filter"] = to_string(c.path_filter);
  j["trace"] = {{"max_reflections", c.trace.max_reflections},
                {"max_diffractions", c.trace.max_diffractions},
                {"angular_resolution_deg", rad2deg(c.trace.angular_resolution)},
                {"dedup_tolerance", c.trace.dedup_tolerance},
                {"diffraction_side_reflections", c.trace.diffraction_side_reflections},
                {"reception_factor", c.trace.reception_factor}};
  j["bs"] = vec2_to(c.bs);
  j["ue"] = vec2_to(c.ue);
  if (c.ris)
    j["ris"] = {{"position", vec2_to(c.ris->position)}, {"azimuth_deg", c.ris->azimuth_deg}};
  else
    j["ris"] = nullptr;
  j["sweep"] = {{"axis", vec2_to(c.sweep.axis)}, {"step_m", c.sweep.step_m}, {"steps", c.sweep.steps}};
  j["grid"] = {{"nx", c.grid.nx},
               {"ny", c.grid.ny},
               {"spacing_wavelengths", c.grid.spacing_wavelengths},
               {"center", vec2_to(c.grid.center)}};
  if (c.size_sweep)
    j["size_sweep"] = {{"sizes", c.size_sweep->sizes}, {"point", c.size_sweep->point}};
  else
    j["size_sweep"] = nullptr;
  return j;
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override must look like key=value: " + assignment);
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  json* node = &doc;
  std::size_t start = 0;
  for (;;) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ConfigError("malformed override key: " + key);
    if (!node->is_object()) throw ConfigError("override path crosses a non-object at '" + part + "'");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    json& child = (*node)[part];
    if (child.is_null()) child = json::object();
    node = &child;
    start = dot + 1;
  }
}

Scene load_scenario_scene(const ScenarioConfig& cfg, const std::filesystem::path& base_dir) {
  if (cfg.scene == "ground") {
    const Material* m = MaterialLibrary::defaults().find(cfg.ground_material);
    if (!m) throw SceneError("unknown ground material '" + cfg.ground_material + "'");
    return ground_only_scene(*m);
  }
  return load_scene(resolve_scene_path(cfg.scene, base_dir));
}

json load_preset(const std::string& name) {
  auto path = data_directory() / "presets" / name;
  if (path.extension() != ".json") path += ".json";
  std::ifstream in(path);
  if (!in) throw ConfigError("unknown preset '" + name + "'");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError("preset '" + name + "' is not valid JSON");
  return j;
}

}  // namespace rtris
