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

#include "rtris/scene.hpp"

#include <algorithm>
#include <fstream>
#include <limits>

#include "rtris/error.hpp"

namespace rtris {

namespace {

constexpr double kVertexTol = 1e-9;
constexpr double kRayEps = 1e-9;

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double signed_area(const std::vector<Vec2>& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) a += cross2(poly[i], poly[(i + 1) % poly.size()]);
  return 0.5 * a;
}

bool point_in_polygon(const std::vector<Vec2>& poly, double x, double y) {
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[j];
    if ((a.y() > y) != (b.y() > y)) {
      const double xc = (b.x() - a.x()) * (y - a.y()) / (b.y() - a.y()) + a.x();
      if (x < xc) inside = !inside;
    }
  }
  return inside;
}

double distance_to_polygon_boundary(const std::vector<Vec2>& poly, const Vec2& p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    const Vec2 ab = b - a;
    const double s = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
    best = std::min(best, (a + s * ab - p).norm());
  }
  return best;
}

// Proper or touching intersection of closed segments ab and cd.
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const double d1 = cross2(b - a, c - a);
  const double d2 = cross2(b - a, d - a);
  const double d3 = cross2(d - c, a - c);
  const double d4 = cross2(d - c, b - c);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  auto on_segment = [](const Vec2& p, const Vec2& q, const Vec2& r) {
    return std::min(p.x(), q.x()) - kVertexTol <= r.x() && r.x() <= std::max(p.x(), q.x()) + kVertexTol &&
           std::min(p.y(), q.y()) - kVertexTol <= r.y() && r.y() <= std::max(p.y(), q.y()) + kVertexTol;
  };
  if (std::abs(d1) < kVertexTol && on_segment(a, b, c)) return true;
  if (std::abs(d2) < kVertexTol && on_segment(a, b, d)) return true;
  if (std::abs(d3) < kVertexTol && on_segment(c, d, a)) return true;
  if (std::abs(d4) < kVertexTol && on_segment(c, d, b)) return true;
  return false;
}

}  // namespace

bool operator==(const ExtrudedPolygon& a, const ExtrudedPolygon& b) {
  if (a.height != b.height || !(a.material == b.material)) return false;
  if (a.footprint.size() != b.footprint.size()) return false;
  for (std::size_t i = 0; i < a.footprint.size(); ++i)
    if (a.footprint[i] != b.footprint[i]) return false;
  return true;
}

double Edge::angle_of(const Vec3& dir) const {
  const Vec3 w = dir - dir.dot(direction) * direction;
  double phi = std::atan2(w.dot(face0_normal), w.dot(face0_tangent));
  if (phi < 0.0) phi += kTwoPi;
  return phi;
}

std::vector<Vec2> normalize_footprint(std::vector<Vec2> fp) {
  const std::size_t n = fp.size();
  if (n < 3) throw SceneError("footprint needs at least 3 vertices");
  for (std::size_t i = 0; i < n; ++i) {
    if (!fp[i].allFinite()) throw SceneError("footprint vertex is not finite");
    for (std::size_t j = i + 1; j < n; ++j)
      if ((fp[i] - fp[j]).norm() < kVertexTol) throw SceneError("duplicate footprint vertex");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (segments_intersect(fp[i], fp[(i + 1) % n], fp[j], fp[(j + 1) % n]))
        throw SceneError("self-intersecting footprint");
    }
  }
  const double area = signed_area(fp);
  if (std::abs(area) < kVertexTol) throw SceneError("degenerate footprint with zero area");
  if (area < 0.0) std::reverse(fp.begin(), fp.end());
  return fp;
}

Scene::Scene(Material ground, std::vector<ExtrudedPolygon> buildings, std::optional<GeoAnchor> anchor)
    : buildings_(std::move(buildings)), anchor_(anchor) {
  try {
    ground.validate();
    if (anchor_) anchor_->validate();
  } catch (const DomainError& e) {
    throw SceneError(e.what());
  }
  materials_.push_back(std::move(ground));

  Face g;
  g.kind = FaceKind::ground;
  g.plane = {Vec3::UnitZ(), 0.0};
  g.material = 0;
  faces_.push_back(g);

  for (std::size_t b = 0; b < buildings_.size(); ++b) {
    auto& bld = buildings_[b];
    if (!(bld.height > 0.0) || !std::isfinite(bld.height))
      throw SceneError("building " + std::to_string(b) + ": height must be positive");
    try {
      bld.material.validate();
    } catch (const DomainError& e) {
      throw SceneError(e.what());
    }
    bld.footprint = normalize_footprint(std::move(bld.footprint));
    const int mat = static_cast<int>(materials_.size());
    materials_.push_back(bld.material);

    const auto& fp = bld.footprint;
    const int n = static_cast<int>(fp.size());
    const int first = static_cast<int>(faces_.size());
    for (int i = 0; i < n; ++i) {
      const Vec2& p = fp[static_cast<std::size_t>(i)];
      const Vec2& q = fp[static_cast<std::size_t>((i + 1) % n)];
      const Vec2 t2 = (q - p).normalized();
      Face w;
      w.kind = FaceKind::wall;
      w.building = static_cast<int>(b);
      w.index = i;
      w.plane.normal = Vec3(t2.y(), -t2.x(), 0.0);
      w.plane.offset = w.plane.normal.dot(Vec3(p.x(), p.y(), 0.0));
      w.material = mat;
      w.origin = Vec3(p.x(), p.y(), 0.0);
      w.tangent = Vec3(t2.x(), t2.y(), 0.0);
      w.width = (q - p).norm();
      w.height = bld.height;
      faces_.push_back(w);
    }
    Face roof;
    roof.kind = FaceKind::roof;
    roof.building = static_cast<int>(b);
    roof.plane = {Vec3::UnitZ(), bld.height};
    roof.material = mat;
    roof.height = bld.height;
    faces_.push_back(roof);
    const int roof_id = static_cast<int>(faces_.size()) - 1;
    building_faces_.emplace_back(first, roof_id + 1);

    Box box{Vec3(fp[0].x(), fp[0].y(), 0.0), Vec3(fp[0].x(), fp[0].y(), bld.height)};
    for (const auto& v : fp) {
      box.lo = box.lo.cwiseMin(Vec3(v.x(), v.y(), 0.0));
      box.hi = box.hi.cwiseMax(Vec3(v.x(), v.y(), bld.height));
    }
    boxes_.push_back(box);

    // Vertical edges at convex footprint corners.
    for (int i = 0; i < n; ++i) {
      const Vec2& prev = fp[static_cast<std::size_t>((i + n - 1) % n)];
      const Vec2& cur = fp[static_cast<std::size_t>(i)];
      const Vec2& next = fp[static_cast<std::size_t>((i + 1) % n)];
      const Vec2 ein = cur - prev;
      const Vec2 eout = next - cur;
      const double turn = std::atan2(cross2(ein, eout), ein.dot(eout));
      if (turn <= 1e-9) continue;  // reflex or straight corner
      const double interior = kPi - turn;
      const Face& f0 = faces_[static_cast<std::size_t>(first + (i + n - 1) % n)];
      Edge e;
      e.building = static_cast<int>(b);
      e.index = i;
      e.vertical = true;
      e.origin = Vec3(cur.x(), cur.y(), 0.0);
      e.face0_tangent = -f0.tangent;
      e.face0_normal = f0.plane.normal;
      e.direction = e.face0_tangent.cross(e.face0_normal).normalized();
      e.length = bld.height;
      e.wedge_n = (kTwoPi - interior) / kPi;
      e.face0 = first + (i + n - 1) % n;
      e.facen = first + i;
      if (e.direction.z() < 0.0) e.origin.z() = bld.height;
      edges_.push_back(e);
    }
    // Roof edges: wall i meets the flat roof at a right angle.
    for (int i = 0; i < n; ++i) {
      const Face& wall = faces_[static_cast<std::size_t>(first + i)];
      Edge e;
      e.building = static_cast<int>(b);
      e.index = i;
      e.vertical = false;
      e.face0_tangent = -Vec3::UnitZ();
      e.face0_normal = wall.plane.normal;
      e.direction = e.face0_tangent.cross(e.face0_normal).normalized();
      e.length = wall.width;
      const Vec3 a = wall.origin + Vec3(0, 0, bld.height);
      const Vec3 c = a + wall.width * wall.tangent;
      e.origin = (c - a).dot(e.direction) > 0.0 ? a : c;
      e.wedge_n = 1.5;
      e.face0 = first + i;
      e.facen = roof_id;
      edges_.push_back(e);
    }
  }
}

const Material& Scene::face_material(int face_id) const {
  return materials_.at(static_cast<std::size_t>(face(face_id).material));
}

std::optional<Bounds2> Scene::bounds() const {
  if (buildings_.empty()) return std::nullopt;
  Bounds2 b{boxes_[0].lo.head<2>(), boxes_[0].hi.head<2>()};
  for (const auto& box : boxes_) {
    b.min = b.min.cwiseMin(box.lo.head<2>());
    b.max = b.max.cwiseMax(box.hi.head<2>());
  }
  return b;
}

bool Scene::slab_hit(const Box& box, const Vec3& o, const Vec3& inv_d, double t_max) const {
  double t0 = 0.0;
  double t1 = t_max;
  for (int k = 0; k < 3; ++k) {
    double ta = (box.lo[k] - o[k]) * inv_d[k];
    double tb = (box.hi[k] - o[k]) * inv_d[k];
    if (std::isnan(ta) || std::isnan(tb)) {
      // Ray parallel to the slab and lying exactly on one of its planes.
      if (o[k] < box.lo[k] - kRayEps || o[k] > box.hi[k] + kRayEps) return false;
      continue;
    }
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1 + kRayEps) return false;
  }
  return true;
}

std::optional<double> Scene::face_hit(int face_id, const Vec3& o, const Vec3& d) const {
  const Face& f = faces_[static_cast<std::size_t>(face_id)];
  const double denom = f.plane.normal.dot(d);
  if (std::abs(denom) < 1e-15) return std::nullopt;
  const double t = (f.plane.offset - f.plane.normal.dot(o)) / denom;
  if (!(t > 0.0)) return std::nullopt;
  const Vec3 p = o + t * d;
  if (f.kind == FaceKind::ground) return t;
  if (!within_face(face_id, p)) return std::nullopt;
  return t;
}

std::optional<RayHit> Scene::intersect(const Vec3& o, const Vec3& d, double t_max, int skip_face) const {
  std::optional<RayHit> best;
  double limit = t_max;
  if (skip_face != 0 && d.z() < 0.0) {
    const double t = -o.z() / d.z();
    if (t > kRayEps && t < limit) {
      best = RayHit{t, 0};
      limit = t;
    }
  }
  const Vec3 inv_d = d.cwiseInverse();
  for (std::size_t b = 0; b < boxes_.size(); ++b) {
    if (!slab_hit(boxes_[b], o, inv_d, limit)) continue;
    const auto [first, last] = building_faces_[b];
    for (int f = first; f < last; ++f) {
      if (f == skip_face) continue;
      auto t = face_hit(f, o, d);
      if (t && *t > kRayEps && *t < limit) {
        best = RayHit{*t, f};
        limit = *t;
      }
    }
  }
  return best;
}

bool Scene::segment_blocked(const Vec3& a, const Vec3& b, double endpoint_tol) const {
  if (a.z() < -endpoint_tol || b.z() < -endpoint_tol) return true;
  const Vec3 ab = b - a;
  const double len = ab.norm();
  if (len <= 2.0 * endpoint_tol) return false;
  const Vec3 d = ab / len;
  const Vec3 inv_d = d.cwiseInverse();
  for (std::size_t bi = 0; bi < boxes_.size(); ++bi) {
    if (!slab_hit(boxes_[bi], a, inv_d, len)) continue;
    const auto [first, last] = building_faces_[bi];
    for (int f = first; f < last; ++f) {
      auto t = face_hit(f, a, d);
      if (t && *t > endpoint_tol && *t < len - endpoint_tol) return true;
    }
  }
  return false;
}

bool Scene::inside_building(const Vec3& p) const {
  if (p.z() < 0.0) return true;
  for (const auto& b : buildings_) {
    if (p.z() >= b.height) continue;
    if (point_in_polygon(b.footprint, p.x(), p.y()) &&
        distance_to_polygon_boundary(b.footprint, p.head<2>()) > 0.0)
      return true;
  }
  return false;
}

bool Scene::within_face(int face_id, const Vec3& p, double tol) const {
  const Face& f = faces_[static_cast<std::size_t>(face_id)];
  switch (f.kind) {
    case FaceKind::ground:
      return true;
    case FaceKind::wall: {
      const double u = (p - f.origin).dot(f.tangent);
      return u >= -tol && u <= f.width + tol && p.z() >= -tol && p.z() <= f.height + tol;
    }
    case FaceKind::roof: {
      const auto& fp = buildings_[static_cast<std::size_t>(f.building)].footprint;
      if (point_in_polygon(fp, p.x(), p.y())) return true;
      return distance_to_polygon_boundary(fp, p.head<2>()) <= tol;
    }
  }
  return false;
}

std::string Scene::face_name(int face_id) const {
  const Face& f = face(face_id);
  switch (f.kind) {
    case FaceKind::ground:
      return "ground";
    case FaceKind::wall:
      return "bldg" + std::to_string(f.building) + ".wall" + std::to_string(f.index);
    case FaceKind::roof:
      return "bldg" + std::to_string(f.building) + ".roof";
  }
  return "?";
}

std::string Scene::edge_name(int edge_id) const {
  const Edge& e = edge(edge_id);
  return "bldg" + std::to_string(e.building) + (e.vertical ? ".vedge" : ".redge") +
         std::to_string(e.index);
}

bool operator==(const Scene& a, const Scene& b) {
  return a.ground_material() == b.ground_material() && a.buildings_ == b.buildings_ &&
         a.anchor_ == b.anchor_;
}

Scene scene_from_json(const nlohmann::json& doc, const MaterialLibrary& fallback) {
  if (!doc.is_object()) throw SceneError("scene document must be a JSON object");
  if (!doc.contains("schema")) throw SceneError("scene: missing mandatory 'schema' field");
  if (!doc.at("schema").is_number_integer() || doc.at("schema").get<int>() != 1)
    throw SceneError("scene: unsupported schema version (expected 1)");

  try {
    MaterialLibrary local;
    if (doc.contains("materials")) local = MaterialLibrary::from_json(doc.at("materials"));
    auto lookup = [&](const std::string& name) -> Material {
      if (const Material* m = local.find(name)) return *m;
      if (const Material* m = fallback.find(name)) return *m;
      throw SceneError("unknown material '" + name + "'");
    };

    std::optional<GeoAnchor> anchor;
    if (doc.contains("anchor")) {
      const auto& a = doc.at("anchor");
      anchor = GeoAnchor{a.at("lat").get<double>(), a.at("lon").get<double>()};
    }

    Material ground = lookup(doc.at("ground").at("material").get<std::string>());

    std::vector<ExtrudedPolygon> buildings;
    if (doc.contains("buildings")) {
      for (const auto& jb : doc.at("buildings")) {
        ExtrudedPolygon p;
        if (jb.contains("footprint")) {
          for (const auto& v : jb.at("footprint")) {
            if (!v.is_array() || v.size() != 2) throw SceneError("footprint vertex must be [x, y]");
            p.footprint.emplace_back(v[0].get<double>(), v[1].get<double>());
          }
        } else if (jb.contains("footprint_geo")) {
          if (!anchor) throw SceneError("footprint_geo requires a scene anchor");
          for (const auto& v : jb.at("footprint_geo")) {
            if (!v.is_array() || v.size() != 2)
              throw SceneError("footprint_geo vertex must be [lat, lon]");
            p.footprint.push_back(geo_to_local(*anchor, {v[0].get<double>(), v[1].get<double>()}));
          }
        } else {
          throw SceneError("building without footprint");
        }
        p.height = jb.at("height").get<double>();
        p.material = lookup(jb.at("material").get<std::string>());
        buildings.push_back(std::move(p));
      }
    }
    return Scene(std::move(ground), std::move(buildings), anchor);
  } catch (const nlohmann::json::exception& e) {
    throw SceneError(std::string("scene: ") + e.what());
  } catch (const DomainError& e) {
    throw SceneError(std::string("scene: ") + e.what());
  }
}

Scene load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SceneError("cannot open scene file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw SceneError("scene file " + path.string() + ": " + e.what());
  }
  return scene_from_json(doc);
}

std::filesystem::path resolve_scene_path(const std::string& ref, const std::filesystem::path& base_dir) {
  namespace fs = std::filesystem;
  const fs::path p(ref);
  if (p.is_absolute()) {
    if (fs::exists(p)) return p;
    throw SceneError("scene file not found: " + ref);
  }
  if (!base_dir.empty() && fs::exists(base_dir / p)) return base_dir / p;
  if (fs::exists(p)) return p;
  const fs::path bundled = data_directory() / "scenes";
  if (fs::exists(bundled / p)) return bundled / p;
  if (fs::exists(bundled / (ref + ".json"))) return bundled / (ref + ".json");
  throw SceneError("scene not found: " + ref);
}

Scene ground_only_scene(const Material& ground) { return Scene(ground, {}); }

}  // namespace rtris
