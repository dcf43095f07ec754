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


// Shooting-and-bouncing-rays discovery for PathFinder.

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <set>
#include <unordered_map>

#include "rtris/error.hpp"
#include "rtris/tracer.hpp"

namespace rtris {

namespace {

constexpr double kIcoEdgeAngle = 1.1071487177940904;  // atan(2)
constexpr float kEscapeLength = 1.0e4f;                // meters, for rays leaving the scene

struct Segment {
  std::array<float, 3> o;
  std::array<float, 3> d;
  float len;
  float l0;  // unfolded length at the segment start
};

// Reception test shared by the stored and streaming modes so that both give
// bit-identical candidates.
inline bool receives(const Segment& s, const std::array<float, 3>& p, float radius_per_meter) {
  const float vx = p[0] - s.o[0], vy = p[1] - s.o[1], vz = p[2] - s.o[2];
  float t = vx * s.d[0] + vy * s.d[1] + vz * s.d[2];
  t = std::clamp(t, 0.0f, s.len);
  const float ex = vx - t * s.d[0], ey = vy - t * s.d[1], ez = vz - t * s.d[2];
  const float r = radius_per_meter * (s.l0 + t);
  return ex * ex + ey * ey + ez * ez <= r * r;
}

std::array<float, 3> to_float(const Vec3& v) {
  return {static_cast<float>(v.x()), static_cast<float>(v.y()), static_cast<float>(v.z())};
}

void check_endpoint(const Scene& scene, const Vec3& p, const char* what) {
  if (!p.allFinite()) throw GeometryError(std::string(what) + " position is not finite");
  if (!(p.z() > 0.0)) throw GeometryError(std::string(what) + " must be above the ground");
  if (scene.inside_building(p)) throw GeometryError(std::string(what) + " lies inside a building");
}

DirectionGrid build_icosphere(int freq) {
  const double g = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v = {{-1, g, 0}, {1, g, 0}, {-1, -g, 0}, {1, -g, 0}, {0, -1, g}, {0, 1, g},
                         {0, -1, -g}, {0, 1, -g}, {g, 0, -1}, {g, 0, 1}, {-g, 0, -1}, {-g, 0, 1}};
  auto adjacent = [&](int a, int b) { return std::abs((v[a] - v[b]).squaredNorm() - 4.0) < 1e-9; };
  std::vector<std::array<int, 3>> faces;
  std::vector<std::array<int, 2>> edges;
  for (int a = 0; a < 12; ++a)
    for (int b = a + 1; b < 12; ++b) {
      if (!adjacent(a, b)) continue;
      edges.push_back({a, b});
      for (int c = b + 1; c < 12; ++c)
        if (adjacent(a, c) && adjacent(b, c)) faces.push_back({a, b, c});
    }
  DirectionGrid grid;
  const std::size_t n = 10 * static_cast<std::size_t>(freq) * freq + 2;
  grid.directions.reserve(n);
  for (const auto& p : v) grid.directions.push_back(p.normalized());
  const double f = freq;
  for (const auto& e : edges)
    for (int i = 1; i < freq; ++i)
      grid.directions.push_back((v[e[0]] * (f - i) + v[e[1]] * i).normalized());
  for (const auto& t : faces)
    for (int i = 1; i < freq; ++i)
      for (int j = 1; i + j < freq; ++j)
        grid.directions.push_back((v[t[0]] * (f - i - j) + v[t[1]] * i + v[t[2]] * j).normalized());
  grid.spacing = kIcoEdgeAngle / f;
  return grid;
}

std::shared_ptr<const DirectionGrid> cached_grid(double angular_resolution) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const DirectionGrid>> cache;
  const int freq = std::max(1, static_cast<int>(std::ceil(kIcoEdgeAngle / angular_resolution - 1e-9)));
  std::lock_guard lock(mu);
  auto& slot = cache[freq];
  if (!slot) slot = std::make_shared<const DirectionGrid>(build_icosphere(freq));
  return slot;
}

}  // namespace

DirectionGrid icosphere_directions(double angular_resolution) {
  if (!(angular_resolution > 0.0)) throw DomainError("angular resolution must be positive");
  return *cached_grid(angular_resolution);
}

struct PathFinder::RayStore {
  // Trie of reflection face sequences; node 0 is the empty sequence.
  std::vector<int> parent{-1};
  std::vector<int> face{-1};
  std::vector<int> depth{0};
  std::unordered_map<std::uint64_t, int> children;

  bool stored = false;
  std::vector<Segment> segments;
  std::vector<int> segment_node;
  float radius_per_meter = 0.0f;

  // Source images through every face, for diffraction enumeration.
  std::vector<std::optional<Vec3>> source_images;

  int child(int p, int f) {
    const std::uint64_t key = (static_cast<std::uint64_t>(p) << 32) | static_cast<std::uint32_t>(f);
    auto [it, inserted] = children.try_emplace(key, static_cast<int>(parent.size()));
    if (inserted) {
      parent.push_back(p);
      face.push_back(f);
      depth.push_back(depth[static_cast<std::size_t>(p)] + 1);
    }
    return it->second;
  }

  std::vector<int> sequence(int node) const {
    std::vector<int> seq(static_cast<std::size_t>(depth[static_cast<std::size_t>(node)]));
    for (int n = node; n > 0; n = parent[static_cast<std::size_t>(n)])
      seq[static_cast<std::size_t>(depth[static_cast<std::size_t>(n)] - 1)] = face[static_cast<std::size_t>(n)];
    return seq;
  }

  // Launches every ray and hands each segment carrying >= 2 reflections to `sink`.
  template <class Sink>
  void launch(const Scene& scene, const Vec3& src, const TraceConfig& cfg, const DirectionGrid& grid, Sink&& sink) {
    const int max_r = cfg.max_reflections;
    for (const Vec3& dir0 : grid.directions) {
      Vec3 o = src;
      Vec3 d = dir0;
      int node = 0;
      int skip = -1;
      double l0 = 0.0;
      for (int bounce = 0;; ++bounce) {
        const auto hit = scene.intersect(o, d, kEscapeLength, skip);
        if (bounce >= 2) {
          Segment s{to_float(o), to_float(d), hit ? static_cast<float>(hit->t) : kEscapeLength,
                    static_cast<float>(l0)};
          sink(s, node);
        }
        if (!hit || bounce == max_r) break;
        const Vec3& n = scene.face(hit->face).plane.normal;
        if (d.dot(n) >= 0.0) break;  // struck from behind: not a physical reflection
        o += hit->t * d;
        d = reflect_direction(d, n).normalized();
        l0 += hit->t;
        node = child(node, hit->face);
        skip = hit->face;
      }
    }
  }
};

PathFinder::PathFinder(const Scene& scene, const Vec3& source, const TraceConfig& cfg, bool store_rays)
    : scene_(&scene), source_(source), cfg_(cfg), store_(std::make_unique<RayStore>()) {
  cfg_.validate();
  check_endpoint(scene, source, "source");
  const auto& faces = scene.faces();
  store_->source_images.resize(faces.size());
  for (std::size_t f = 0; f < faces.size(); ++f)
    if (faces[f].plane.signed_distance(source) > 1e-9) store_->source_images[f] = faces[f].plane.mirror(source);
  if (store_rays && cfg_.max_reflections >= 2) {
    const auto grid = cached_grid(cfg_.angular_resolution);
    store_->radius_per_meter = static_cast<float>(cfg_.reception_factor * grid->spacing);
    store_->launch(scene, source, cfg_, *grid, [&](const Segment& s, int node) {
      store_->segments.push_back(s);
      store_->segment_node.push_back(node);
    });
    store_->stored = true;
  }
}

PathFinder::~PathFinder() = default;
PathFinder::PathFinder(PathFinder&&) noexcept = default;
PathFinder& PathFinder::operator=(PathFinder&&) noexcept = default;

std::size_t PathFinder::stored_segments() const { return store_->segments.size(); }

std::vector<PropagationPath> PathFinder::paths_to(const Vec3& dst) const {
  const Scene& scene = *scene_;
  check_endpoint(scene, dst, "destination");
  if ((dst - source_).norm() < 1e-9) throw GeometryError("destination coincides with the source");

  std::vector<PropagationPath> paths;
  if (!scene.segment_blocked(source_, dst)) paths.push_back(PropagationPath::from_vertices({source_, dst}, {}));

  const int nf = static_cast<int>(scene.faces().size());
  if (cfg_.max_reflections >= 1)
    for (int f = 0; f < nf; ++f) {
      const int seq[1] = {f};
      if (auto p = image_path(scene, source_, dst, seq)) paths.push_back(std::move(*p));
    }

  if (cfg_.max_reflections >= 2) {
    std::set<int> nodes;
    const auto target = to_float(dst);
    RayStore local;  // streaming queries keep their own trie so concurrent calls are safe
    const RayStore* trie = store_->stored ? store_.get() : &local;
    if (store_->stored) {
      const float k = store_->radius_per_meter;
      const auto& segs = store_->segments;
      for (std::size_t i = 0; i < segs.size(); ++i)
        if (receives(segs[i], target, k)) nodes.insert(store_->segment_node[i]);
    } else {
      const auto grid = cached_grid(cfg_.angular_resolution);
      const float k = static_cast<float>(cfg_.reception_factor * grid->spacing);
      local.launch(scene, source_, cfg_, *grid, [&](const Segment& s, int node) {
        if (receives(s, target, k)) nodes.insert(node);
      });
    }
    for (int node : nodes) {
      const auto seq = trie->sequence(node);
      if (auto p = image_path(scene, source_, dst, seq)) paths.push_back(std::move(*p));
    }
  }

  if (cfg_.max_diffractions >= 1) {
    const int side = std::min(cfg_.diffraction_side_reflections, cfg_.max_reflections);
    const auto& faces = scene.faces();
    std::vector<int> dst_front;
    if (side >= 1)
      for (int f = 0; f < nf; ++f)
        if (faces[static_cast<std::size_t>(f)].plane.signed_distance(dst) > 1e-9) dst_front.push_back(f);
    std::vector<int> src_front;
    if (side >= 1)
      for (int f = 0; f < nf; ++f)
        if (store_->source_images[static_cast<std::size_t>(f)]) src_front.push_back(f);

    const int ne = static_cast<int>(scene.edges().size());
    for (int e = 0; e < ne; ++e) {
      const Edge& edge = scene.edge(e);
      auto keller_in_range = [&](const Vec3& s_img, const Vec3& d_img) {
        const Vec3 vs = s_img - edge.origin;
        const Vec3 vd = d_img - edge.origin;
        const double as = vs.dot(edge.direction);
        const double ad = vd.dot(edge.direction);
        const double rs = (vs - as * edge.direction).norm();
        const double rd = (vd - ad * edge.direction).norm();
        if (rs + rd < 1e-12) return false;
        const double t = as + (ad - as) * rs / (rs + rd);
        return t > 0.0 && t < edge.length;
      };
      auto attempt = [&](int before, int after) {
        const Vec3 s_img = before < 0 ? source_ : *store_->source_images[static_cast<std::size_t>(before)];
        const Vec3 d_img = after < 0 ? dst : faces[static_cast<std::size_t>(after)].plane.mirror(dst);
        if (!keller_in_range(s_img, d_img)) return;
        const std::span<const int> b = before < 0 ? std::span<const int>{} : std::span<const int>(&before, 1);
        const std::span<const int> a = after < 0 ? std::span<const int>{} : std::span<const int>(&after, 1);
        if (auto p = diffraction_path(scene, source_, dst, b, e, a)) paths.push_back(std::move(*p));
      };
      attempt(-1, -1);
      if (side < 1) continue;
      for (int fb : src_front) attempt(fb, -1);
      if (cfg_.max_reflections >= 1)
        for (int fa : dst_front) attempt(-1, fa);
      if (cfg_.max_reflections >= 2)
        for (int fb : src_front)
          for (int fa : dst_front) attempt(fb, fa);
    }
  }

  canonicalize(paths, cfg_.dedup_tolerance);
  return paths;
}

}  // namespace rtris
