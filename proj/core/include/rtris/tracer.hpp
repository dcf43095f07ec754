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

#include <compare>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rtris/geometry.hpp"
#include "rtris/scene.hpp"

namespace rtris {

enum class InteractionKind : int { reflection = 0, diffraction = 1 };

/// One interaction along a path: a reflection on a face or a diffraction on
/// an edge (ids index Scene::faces() / Scene::edges()).
struct Interaction {
  InteractionKind kind = InteractionKind::reflection;
  int id = 0;

  static Interaction reflection(int face) { return {InteractionKind::reflection, face}; }
  static Interaction diffraction(int edge) { return {InteractionKind::diffraction, edge}; }

  friend auto operator<=>(const Interaction&, const Interaction&) = default;
};

struct PropagationPath {
  std::vector<Vec3> vertices;  // source, interaction points..., destination
  std::vector<Interaction> interactions;
  double length = 0.0;
  Vec3 departure_dir = Vec3::UnitX();  // unit, leaving the source
  Vec3 arrival_dir = Vec3::UnitX();    // unit, propagation direction at the destination

  bool is_los() const { return interactions.empty(); }
  int reflection_count() const;
  int diffraction_count() const;

  /// Builds a path from its vertices, filling length and directions.
  static PropagationPath from_vertices(std::vector<Vec3> vertices, std::vector<Interaction> interactions);
};

struct TraceConfig {
  int max_reflections = 5;
  int max_diffractions = 0;                // 0 or 1
  double angular_resolution = deg2rad(0.25);  // SBR launch spacing, radians
  double dedup_tolerance = 1e-3;           // meters
  // Reflections allowed on each side of a diffraction (each also bounded by
  // max_reflections in total).
  int diffraction_side_reflections = 1;
  // Reception sphere radius = reception_factor * ray spacing * unfolded length.
  double reception_factor = 1.0;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

/// Canonical ordering: interaction count, then length, then interaction ids.
bool canonical_less(const PropagationPath& a, const PropagationPath& b);

/// Sorts canonically and drops duplicates: identical interaction sequences,
/// or equal interaction counts with lengths and vertices within `tolerance`.
void canonicalize(std::vector<PropagationPath>& paths, double tolerance);

/// Exact image-method path for a given reflection face sequence, or nullopt
/// if the geometry is invalid (reflection point off a face, wrong side, or an
/// obstructed segment).
std::optional<PropagationPath> image_path(const Scene& scene, const Vec3& src, const Vec3& dst,
                                          std::span<const int> faces);

/// Exact single-diffraction path src -> (before...) -> edge -> (after...) -> dst
/// where `before` and `after` are reflection face sequences in travel order.
std::optional<PropagationPath> diffraction_path(const Scene& scene, const Vec3& src, const Vec3& dst,
                                                std::span<const int> before, int edge,
                                                std::span<const int> after);

/// Shooting-and-bouncing-rays path finder anchored at one source.
///
/// Rays are launched on a subdivided-icosahedron direction grid and bounced
/// up to max_reflections times. Every ray segment that passes within the
/// reception radius of a destination nominates its reflection sequence; the
/// candidate is then rebuilt exactly by the image method, so returned paths
/// do not depend on the launch resolution. Direct and single-reflection paths
/// are enumerated exactly instead of being discovered by rays.
///
/// With `store_rays` the ray segments are kept so that many destinations can
/// be queried without relaunching; otherwise each query relaunches.
class PathFinder {
 public:
  PathFinder(const Scene& scene, const Vec3& source, const TraceConfig& cfg, bool store_rays = true);
  ~PathFinder();
  PathFinder(PathFinder&&) noexcept;
  PathFinder& operator=(PathFinder&&) noexcept;

  /// Canonically ordered, deduplicated paths to `dst`.
  /// Throws GeometryError if dst is inside a building, below ground or equal to the source.
  std::vector<PropagationPath> paths_to(const Vec3& dst) const;

  const Vec3& source() const { return source_; }
  const TraceConfig& config() const { return cfg_; }
  std::size_t stored_segments() const;

 private:
  struct RayStore;

  const Scene* scene_;
  Vec3 source_;
  TraceConfig cfg_;
  std::unique_ptr<RayStore> store_;
};

/// All paths from src to dst under `cfg` (SBR discovery + exact refinement).
std::vector<PropagationPath> trace(const Scene& scene, const Vec3& src, const Vec3& dst, const TraceConfig& cfg);

/// Exhaustive image-method enumeration over every face sequence of length
/// <= max_reflections (at most 3). Reflection-only. Throws DomainError above 3.
std::vector<PropagationPath> image_trace(const Scene& scene, const Vec3& src, const Vec3& dst,
                                         int max_reflections);

/// Unit directions of a subdivided icosahedron with neighbour spacing close to
/// `angular_resolution`; returns the grid and its actual mean spacing.
struct DirectionGrid {
  std::vector<Vec3> directions;
  double spacing = 0.0;
};
DirectionGrid icosphere_directions(double angular_resolution);

enum class PathFilter { all, los_only, los_and_ground, exclude_los };

PathFilter parse_path_filter(std::string_view name);
std::string to_string(PathFilter filter);
bool path_matches(const Scene& scene, const PropagationPath& path, PathFilter filter);

/// Order-preserving subset of `paths` matching `filter`.
std::vector<PropagationPath> filter_paths(const Scene& scene, std::vector<PropagationPath> paths,
                                          PathFilter filter);
std::vector<PropagationPath> filter_paths(std::vector<PropagationPath> paths,
                                          const std::function<bool(const PropagationPath&)>& keep);

/// The same path travelled from its destination back to its source.
PropagationPath reversed(const PropagationPath& path);

/// "R:ground|R:bldg3.wall2|D:bldg1.vedge0"; empty for line of sight.
std::string interaction_string(const Scene& scene, const PropagationPath& path);

}  // namespace rtris
