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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rtris/geo.hpp"
#include "rtris/geometry.hpp"
#include "rtris/material.hpp"

namespace rtris {

/// Building: a footprint polygon (local ENU meters) extruded from the ground
/// to `height`. Footprints are stored counter-clockwise.
struct ExtrudedPolygon {
  std::vector<Vec2> footprint;
  double height = 0.0;
  Material material;

  friend bool operator==(const ExtrudedPolygon& a, const ExtrudedPolygon& b);
};

enum class FaceKind { ground, wall, roof };

/// Planar face of the scene. Face 0 is always the infinite ground plane z = 0;
/// every other face belongs to a building. Normals point out of the solid.
struct Face {
  FaceKind kind = FaceKind::ground;
  int building = -1;
  int index = 0;  // wall number within the building (footprint edge i -> i+1)
  Plane plane;
  int material = 0;

  // Walls: rectangle spanned by `tangent` (unit, along the footprint edge)
  // over [0, width] and +z over [0, height], starting at `origin`.
  Vec3 origin = Vec3::Zero();
  Vec3 tangent = Vec3::UnitX();
  double width = 0.0;
  double height = 0.0;
};

/// Convex building edge usable as a diffracting wedge.
///
/// Local wedge frame: `face0_tangent` points from the edge into face 0,
/// `face0_normal` is the outward normal of face 0 and
/// direction = face0_tangent x face0_normal. Wedge angles are measured about
/// `direction` starting at face 0 and sweeping through free space to face n at
/// wedge_n * pi.
struct Edge {
  int building = 0;
  int index = 0;
  bool vertical = true;
  Vec3 origin = Vec3::Zero();
  Vec3 direction = Vec3::UnitZ();
  double length = 0.0;
  Vec3 face0_tangent = Vec3::UnitX();
  Vec3 face0_normal = Vec3::UnitY();
  double wedge_n = 1.5;
  int face0 = 0;
  int facen = 0;

  Vec3 point_at(double s) const { return origin + s * direction; }
  /// Wedge angle in [0, 2 pi) of a direction, projected onto the plane
  /// orthogonal to the edge.
  double angle_of(const Vec3& dir) const;
};

struct RayHit {
  double t = 0.0;
  int face = -1;
};

struct Bounds2 {
  Vec2 min = Vec2::Zero();
  Vec2 max = Vec2::Zero();
  bool contains(const Vec2& p, double margin = 0.0) const {
    return p.x() >= min.x() - margin && p.x() <= max.x() + margin &&
           p.y() >= min.y() - margin && p.y() <= max.y() + margin;
  }
};

/// Immutable scene: ground plane plus extruded buildings.
class Scene {
 public:
  Scene(Material ground, std::vector<ExtrudedPolygon> buildings,
        std::optional<GeoAnchor> anchor = std::nullopt);

  const Material& ground_material() const { return materials_.front(); }
  const std::vector<ExtrudedPolygon>& buildings() const { return buildings_; }
  const std::optional<GeoAnchor>& anchor() const { return anchor_; }

  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Face& face(int id) const { return faces_.at(static_cast<std::size_t>(id)); }
  const Edge& edge(int id) const { return edges_.at(static_cast<std::size_t>(id)); }
  const Material& face_material(int face_id) const;

  /// Footprint bounding box of all buildings; nullopt for an empty scene.
  std::optional<Bounds2> bounds() const;

  /// Nearest face hit by the ray o + t d with t in (t_min, t_max). `skip_face`
  /// is excluded (the face a reflected ray leaves from).
  std::optional<RayHit> intersect(const Vec3& origin, const Vec3& dir, double t_max,
                                  int skip_face = -1) const;

  /// True if any building face intersects the open segment (a, b). Contacts
  /// within `endpoint_tol` meters of either endpoint are ignored so that
  /// segments starting on a face or edge are not self-blocked.
  bool segment_blocked(const Vec3& a, const Vec3& b, double endpoint_tol = 1e-7) const;

  /// True if p lies strictly inside a building volume or below the ground.
  bool inside_building(const Vec3& p) const;

  /// Whether a point lying on the plane of `face_id` falls within the face
  /// bounds, allowing `tol` meters of slack.
  bool within_face(int face_id, const Vec3& p, double tol = 1e-9) const;

  std::string face_name(int face_id) const;
  std::string edge_name(int edge_id) const;

  friend bool operator==(const Scene& a, const Scene& b);

 private:
  struct Box {
    Vec3 lo, hi;
  };

  bool slab_hit(const Box& box, const Vec3& o, const Vec3& inv_d, double t_max) const;
  std::optional<double> face_hit(int face_id, const Vec3& o, const Vec3& d) const;

  std::vector<Material> materials_;  // [0] ground, then one per building
  std::vector<ExtrudedPolygon> buildings_;
  std::optional<GeoAnchor> anchor_;
  std::vector<Face> faces_;
  std::vector<Edge> edges_;
  std::vector<Box> boxes_;
  std::vector<std::pair<int, int>> building_faces_;  // [first, last) face ids
};

/// Validates a footprint (>= 3 distinct vertices, simple polygon) and returns
/// it in counter-clockwise order. Throws SceneError.
std::vector<Vec2> normalize_footprint(std::vector<Vec2> footprint);

/// Parses a scene document (schema 1). Material names not defined inline are
/// looked up in `fallback`. Throws SceneError.
Scene scene_from_json(const nlohmann::json& doc,
                      const MaterialLibrary& fallback = MaterialLibrary::defaults());

/// Reads and parses a scene file. Throws SceneError.
Scene load_scene(const std::filesystem::path& path);

/// Resolves a scene reference: an existing path (relative to `base_dir` when
/// relative) or the name of a bundled scene in data_directory()/scenes.
std::filesystem::path resolve_scene_path(const std::string& ref,
                                         const std::filesystem::path& base_dir);

/// Flat ground with no buildings.
Scene ground_only_scene(const Material& ground);

}  // namespace rtris
