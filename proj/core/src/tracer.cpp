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


#include "rtris/tracer.hpp"

#include <algorithm>
#include <string>

#include "rtris/error.hpp"

namespace rtris {

namespace {

constexpr double kSideEps = 1e-9;  // meters; strict front-side tests
constexpr double kEndpointTol = 1e-7;

// Intersection of the segment a -> b with the face plane; a behind (or on the
// mirrored side), b strictly in front.
std::optional<Vec3> plane_crossing(const Plane& plane, const Vec3& a, const Vec3& b) {
  const double da = plane.signed_distance(a);
  const double db = plane.signed_distance(b);
  if (!(db > kSideEps) || !(da < -kSideEps)) return std::nullopt;
  const double t = da / (da - db);
  return a + t * (b - a);
}

bool segments_clear(const Scene& scene, const std::vector<Vec3>& pts) {
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if ((pts[i + 1] - pts[i]).norm() < 1e-9) return false;
    if (scene.segment_blocked(pts[i], pts[i + 1], kEndpointTol)) return false;
  }
  return true;
}

// Mirrors `p` successively through faces[0..k); nullopt if some face does not
// see the current image from its front side.
std::optional<std::vector<Vec3>> image_chain(const Scene& scene, const Vec3& p, std::span<const int> faces) {
  std::vector<Vec3> images;
  images.reserve(faces.size() + 1);
  images.push_back(p);
  for (std::size_t i = 0; i < faces.size(); ++i) {
    if (i > 0 && faces[i] == faces[i - 1]) return std::nullopt;
    const Plane& pl = scene.face(faces[i]).plane;
    if (!(pl.signed_distance(images.back()) > kSideEps)) return std::nullopt;
    images.push_back(pl.mirror(images.back()));
  }
  return images;
}

// Reflection points for the leg src -> faces... -> target given the source
// image chain; appended in travel order.
bool backtrack(const Scene& scene, std::span<const int> faces, const std::vector<Vec3>& images,
               const Vec3& target, std::vector<Vec3>& out) {
  const std::size_t k = faces.size();
  std::vector<Vec3> pts(k);
  Vec3 tgt = target;
  for (std::size_t i = k; i-- > 0;) {
    const auto p = plane_crossing(scene.face(faces[i]).plane, images[i + 1], tgt);
    if (!p || !scene.within_face(faces[i], *p)) return false;
    pts[i] = *p;
    tgt = *p;
  }
  out.insert(out.end(), pts.begin(), pts.end());
  return true;
}

}  // namespace

int PropagationPath::reflection_count() const {
  return static_cast<int>(std::count_if(interactions.begin(), interactions.end(), [](const Interaction& i) {
    return i.kind == InteractionKind::reflection;
  }));
}

int PropagationPath::diffraction_count() const {
  return static_cast<int>(interactions.size()) - reflection_count();
}

PropagationPath PropagationPath::from_vertices(std::vector<Vec3> vertices, std::vector<Interaction> interactions) {
  if (vertices.size() != interactions.size() + 2)
    throw GeometryError("path vertex count does not match its interactions");
  PropagationPath p;
  p.vertices = std::move(vertices);
  p.interactions = std::move(interactions);
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) p.length += (p.vertices[i + 1] - p.vertices[i]).norm();
  p.departure_dir = (p.vertices[1] - p.vertices[0]).normalized();
  const std::size_t m = p.vertices.size();
  p.arrival_dir = (p.vertices[m - 1] - p.vertices[m - 2]).normalized();
  return p;
}

void TraceConfig::validate() const {
  if (max_reflections < 0 || max_reflections > 8)
    throw ConfigError("max_reflections must lie in [0, 8]");
  if (max_diffractions < 0 || max_diffractions > 1)
    throw ConfigError("max_diffractions must be 0 or 1");
  if (!(angular_resolution > 0.0) || angular_resolution > deg2rad(10.0))
    throw ConfigError("angular_resolution must lie in (0, 10] degrees");
  if (!(dedup_tolerance > 0.0)) throw ConfigError("dedup_tolerance must be positive");
  if (diffraction_side_reflections < 0 || diffraction_side_reflections > 1)
    throw ConfigError("diffraction_side_reflections must be 0 or 1");
  if (!(reception_factor > 0.0)) throw ConfigError("reception_factor must be positive");
}

bool canonical_less(const PropagationPath& a, const PropagationPath& b) {
  if (a.interactions.size() != b.interactions.size()) return a.interactions.size() < b.interactions.size();
  if (a.length != b.length) return a.length < b.length;
  return a.interactions < b.interactions;
}

void canonicalize(std::vector<PropagationPath>& paths, double tolerance) {
  std::sort(paths.begin(), paths.end(), canonical_less);
  std::vector<PropagationPath> kept;
  kept.reserve(paths.size());
  for (auto& p : paths) {
    bool dup = false;
    for (auto it = kept.rbegin(); it != kept.rend(); ++it) {
      const auto& q = *it;
      if (q.interactions.size() != p.interactions.size()) break;
      if (q.interactions == p.interactions) {
        dup = true;
        break;
      }
      if (std::abs(q.length - p.length) > tolerance) continue;
      bool same = true;
      for (std::size_t i = 0; i < p.vertices.size() && same; ++i)
        same = (p.vertices[i] - q.vertices[i]).norm() <= tolerance;
      if (same) {
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(std::move(p));
  }
  paths = std::move(kept);
}

std::optional<PropagationPath> image_path(const Scene& scene, const Vec3& src, const Vec3& dst,
                                          std::span<const int> faces) {
  const auto images = image_chain(scene, src, faces);
  if (!images) return std::nullopt;
  std::vector<Vec3> pts{src};
  if (!backtrack(scene, faces, *images, dst, pts)) return std::nullopt;
  pts.push_back(dst);
  if (!segments_clear(scene, pts)) return std::nullopt;
  std::vector<Interaction> its;
  its.reserve(faces.size());
  for (int f : faces) its.push_back(Interaction::reflection(f));
  return PropagationPath::from_vertices(std::move(pts), std::move(its));
}

std::optional<PropagationPath> diffraction_path(const Scene& scene, const Vec3& src, const Vec3& dst,
                                                std::span<const int> before, int edge_id,
                                                std::span<const int> after) {
  const Edge& e = scene.edge(edge_id);
  const auto src_images = image_chain(scene, src, before);
  if (!src_images) return std::nullopt;
  std::vector<int> after_rev(after.rbegin(), after.rend());
  const auto dst_images = image_chain(scene, dst, after_rev);
  if (!dst_images) return std::nullopt;

  // Keller point on the edge line: equal angles with the edge on both sides,
  // which for a straight edge reduces to a ratio of radial distances.
  const Vec3& s_img = src_images->back();
  const Vec3& d_img = dst_images->back();
  const Vec3 vs = s_img - e.origin;
  const Vec3 vd = d_img - e.origin;
  const double as = vs.dot(e.direction);
  const double ad = vd.dot(e.direction);
  const double rs = (vs - as * e.direction).norm();
  const double rd = (vd - ad * e.direction).norm();
  if (rs + rd < 1e-12) return std::nullopt;
  const double t = as + (ad - as) * rs / (rs + rd);
  constexpr double kEdgeMargin = 1e-6;
  if (!(t > kEdgeMargin && t < e.length - kEdgeMargin)) return std::nullopt;
  const Vec3 q = e.point_at(t);

  std::vector<Vec3> pts{src};
  if (!backtrack(scene, before, *src_images, q, pts)) return std::nullopt;
  pts.push_back(q);
  {
    // After-leg points: mirror the reversed chain back into travel order.
    std::vector<Vec3> rev{};
    if (!backtrack(scene, after_rev, *dst_images, q, rev)) return std::nullopt;
    std::reverse(rev.begin(), rev.end());
    pts.insert(pts.end(), rev.begin(), rev.end());
  }
  pts.push_back(dst);

  const std::size_t qi = before.size() + 1;
  const Vec3 to_prev = pts[qi - 1] - q;
  const Vec3 to_next = pts[qi + 1] - q;
  if (to_prev.norm() < 1e-9 || to_next.norm() < 1e-9) return std::nullopt;
  const double wedge_max = e.wedge_n * kPi;
  const double phi_inc = e.angle_of(to_prev.normalized());
  const double phi = e.angle_of(to_next.normalized());
  constexpr double kAngleEps = 1e-9;
  if (!(phi_inc > kAngleEps && phi_inc < wedge_max - kAngleEps)) return std::nullopt;
  if (!(phi > kAngleEps && phi < wedge_max - kAngleEps)) return std::nullopt;
  if (!segments_clear(scene, pts)) return std::nullopt;

  std::vector<Interaction> its;
  for (int f : before) its.push_back(Interaction::reflection(f));
  its.push_back(Interaction::diffraction(edge_id));
  for (int f : after) its.push_back(Interaction::reflection(f));
  return PropagationPath::from_vertices(std::move(pts), std::move(its));
}

std::vector<PropagationPath> trace(const Scene& scene, const Vec3& src, const Vec3& dst, const TraceConfig& cfg) {
  return PathFinder(scene, src, cfg, false).paths_to(dst);
}

std::vector<PropagationPath> image_trace(const Scene& scene, const Vec3& src, const Vec3& dst,
                                         int max_reflections) {
  if (max_reflections < 0 || max_reflections > 3)
    throw DomainError("exhaustive image tracing supports at most 3 reflections");
  std::vector<PropagationPath> out;
  const int nf = static_cast<int>(scene.faces().size());
  std::vector<int> seq;
  // Depth-first over face sequences, pruning when the current image is not in
  // front of the next face.
  std::vector<Vec3> images{src};
  auto visit = [&](auto&& self) -> void {
    if (auto p = image_path(scene, src, dst, seq)) out.push_back(std::move(*p));
    if (static_cast<int>(seq.size()) == max_reflections) return;
    for (int f = 0; f < nf; ++f) {
      if (!seq.empty() && seq.back() == f) continue;
      const Plane& pl = scene.face(f).plane;
      if (!(pl.signed_distance(images.back()) > kSideEps)) continue;
      seq.push_back(f);
      images.push_back(pl.mirror(images.back()));
      self(self);
      images.pop_back();
      seq.pop_back();
    }
  };
  visit(visit);
  canonicalize(out, 1e-3);
  return out;
}

PathFilter parse_path_filter(std::string_view name) {
  if (name == "all") return PathFilter::all;
  if (name == "los_only") return PathFilter::los_only;
  if (name == "los_and_ground") return PathFilter::los_and_ground;
  if (name == "exclude_los") return PathFilter::exclude_los;
  throw ConfigError("unknown path filter '" + std::string(name) + "'");
}

std::string to_string(PathFilter filter) {
  switch (filter) {
    case PathFilter::all:
      return "all";
    case PathFilter::los_only:
      return "los_only";
    case PathFilter::los_and_ground:
      return "los_and_ground";
    case PathFilter::exclude_los:
      return "exclude_los";
  }
  return "all";
}

bool path_matches(const Scene& scene, const PropagationPath& path, PathFilter filter) {
  switch (filter) {
    case PathFilter::all:
      return true;
    case PathFilter::los_only:
      return path.is_los();
    case PathFilter::los_and_ground:
      return path.is_los() ||
             (path.interactions.size() == 1 && path.interactions[0].kind == InteractionKind::reflection &&
              scene.face(path.interactions[0].id).kind == FaceKind::ground);
    case PathFilter::exclude_los:
      return !path.is_los();
  }
  return true;
}

std::vector<PropagationPath> filter_paths(const Scene& scene, std::vector<PropagationPath> paths,
                                          PathFilter filter) {
  std::erase_if(paths, [&](const PropagationPath& p) { return !path_matches(scene, p, filter); });
  return paths;
}

std::vector<PropagationPath> filter_paths(std::vector<PropagationPath> paths,
                                          const std::function<bool(const PropagationPath&)>& keep) {
  std::erase_if(paths, [&](const PropagationPath& p) { return !keep(p); });
  return paths;
}

PropagationPath reversed(const PropagationPath& path) {
  std::vector<Vec3> v(path.vertices.rbegin(), path.vertices.rend());
  std::vector<Interaction> it(path.interactions.rbegin(), path.interactions.rend());
  return PropagationPath::from_vertices(std::move(v), std::move(it));
}

std::string interaction_string(const Scene& scene, const PropagationPath& path) {
  std::string s;
  for (const auto& it : path.interactions) {
    if (!s.empty()) s += '|';
    if (it.kind == InteractionKind::reflection)
      s += "R:" + scene.face_name(it.id);
    else
      s += "D:" + scene.edge_name(it.id);
  }
  return s;
}

}  // namespace rtris
