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

#include <gtest/gtest.h>

#include <thread>

#include "rtris/em.hpp"
#include "rtris/error.hpp"
#include "rtris/tracer.hpp"

using namespace rtris;

namespace {

Scene bundled(const char* name) { return load_scene(resolve_scene_path(name, {})); }

Scene flat() { return ground_only_scene(*MaterialLibrary::defaults().find("concrete")); }

TraceConfig config(int reflections, int diffractions = 0) {
  TraceConfig c;
  c.max_reflections = reflections;
  c.max_diffractions = diffractions;
  return c;
}

std::vector<std::string> sequences(const Scene& s, const std::vector<PropagationPath>& paths) {
  std::vector<std::string> out;
  for (const auto& p : paths) out.push_back(interaction_string(s, p));
  return out;
}

}  // namespace

TEST(Tracer, LineOfSightOnly) {
  const Scene s = flat();
  const auto paths = trace(s, {0, 0, 5}, {30, 40, 5}, config(0));
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_TRUE(paths[0].is_los());
  EXPECT_NEAR(paths[0].length, 50.0, 1e-12);
  EXPECT_NEAR((paths[0].departure_dir - Vec3(0.6, 0.8, 0)).norm(), 0.0, 1e-15);
}

TEST(Tracer, GroundReflectionMatchesImageGeometry) {
  const Scene s = flat();
  const double ht = 5, hr = 1, d = 30;
  const auto paths = trace(s, {0, 0, ht}, {d, 0, hr}, config(1));
  ASSERT_EQ(paths.size(), 2u);
  const PropagationPath& g = paths[1];
  ASSERT_EQ(g.reflection_count(), 1);
  EXPECT_NEAR(g.length, std::hypot(d, ht + hr), 1e-12);
  EXPECT_NEAR(g.vertices[1].z(), 0.0, 1e-12);
  EXPECT_NEAR(g.vertices[1].x(), d * ht / (ht + hr), 1e-12);
  EXPECT_EQ(interaction_string(s, g), "R:ground");
}

TEST(Tracer, SpecularReflectionHasEqualAngles) {
  const Scene s = bundled("single-wall");
  const auto paths = trace(s, {0, -3, 4}, {2, 6, 1.5}, config(1));
  bool found = false;
  for (const auto& p : paths) {
    if (p.reflection_count() != 1 || s.face(p.interactions[0].id).kind != FaceKind::wall) continue;
    const Vec3 n = s.face(p.interactions[0].id).plane.normal;
    const Vec3 in = (p.vertices[1] - p.vertices[0]).normalized();
    const Vec3 out = (p.vertices[2] - p.vertices[1]).normalized();
    EXPECT_NEAR(in.dot(n), -out.dot(n), 1e-12);
    EXPECT_NEAR(in.cross(n).dot(out), 0.0, 1e-12);  // coplanar
    found = true;
  }
  EXPECT_TRUE(found);
}

TEST(Tracer, BlockedLineOfSightIsAbsent) {
  const Scene s = bundled("parallel-walls-blocked");
  // The box hides the direct ray; a reflection off the far wall passes over it.
  const auto paths = trace(s, {0, 0, 1.5}, {6, 0, 5}, config(2));
  for (const auto& p : paths) EXPECT_FALSE(p.is_los());
  EXPECT_FALSE(paths.empty());
}

TEST(Tracer, ShootingMatchesImageMethodOnParallelWalls) {
  const Scene s = bundled("parallel-walls");
  const Vec3 a(-4, -7, 3), b(5, 9, 1.5);
  const auto sbr = trace(s, a, b, config(2));
  const auto img = image_trace(s, a, b, 2);
  ASSERT_EQ(sequences(s, sbr), sequences(s, img));
  for (std::size_t i = 0; i < sbr.size(); ++i) EXPECT_NEAR(sbr[i].length, img[i].length, 1e-9);
}

TEST(Tracer, ImageTraceRejectsHighOrders) {
  EXPECT_THROW(image_trace(flat(), {0, 0, 1}, {1, 0, 1}, 4), DomainError);
}

TEST(Tracer, StoredAndStreamingFindersAgree) {
  const Scene s = bundled("suburb-28ghz");
  const Vec3 bs(4, -20, 5);
  const PathFinder stored(s, bs, config(3), true);
  const PathFinder streaming(s, bs, config(3), false);
  EXPECT_GT(stored.stored_segments(), 0u);
  for (const Vec3& ue : {Vec3(11, 4, 1), Vec3(8, 10, 1.5)}) {
    const auto a = stored.paths_to(ue);
    const auto b = streaming.paths_to(ue);
    ASSERT_EQ(sequences(s, a), sequences(s, b));
  }
}

TEST(Tracer, ConcurrentQueriesAreConsistent) {
  const Scene s = bundled("suburb-28ghz");
  const PathFinder finder(s, {4, -20, 5}, config(2), false);
  const Vec3 ue(11, 5, 1);
  const auto expected = sequences(s, finder.paths_to(ue));
  std::vector<std::vector<std::string>> got(4);
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t) pool.emplace_back([&, t] { got[t] = sequences(s, finder.paths_to(ue)); });
  for (auto& th : pool) th.join();
  for (const auto& g : got) EXPECT_EQ(g, expected);
}

TEST(Tracer, DestinationInsideBuildingThrows) {
  const Scene s = bundled("single-wall");
  EXPECT_THROW(trace(s, {0, 0, 2}, {10.5, 0, 2}, config(1)), GeometryError);
  EXPECT_THROW(trace(s, {0, 0, 2}, {0, 0, 2}, config(1)), GeometryError);
}

TEST(Tracer, CanonicalOrderAndDeduplication) {
  const Scene s = bundled("parallel-walls");
  auto paths = trace(s, {-4, -7, 3}, {5, 9, 1.5}, config(2));
  for (std::size_t i = 1; i < paths.size(); ++i) EXPECT_FALSE(canonical_less(paths[i], paths[i - 1]));
  auto doubled = paths;
  doubled.insert(doubled.end(), paths.begin(), paths.end());
  canonicalize(doubled, 1e-3);
  EXPECT_EQ(sequences(s, doubled), sequences(s, paths));
}

TEST(Tracer, ReversedPathIsTheSameGeometry) {
  const Scene s = bundled("single-wall");
  const auto paths = trace(s, {0, -3, 4}, {2, 6, 1.5}, config(2));
  for (const auto& p : paths) {
    const PropagationPath r = reversed(p);
    EXPECT_NEAR(r.length, p.length, 1e-12);
    EXPECT_EQ(r.vertices.front(), p.vertices.back());
    EXPECT_NEAR((r.departure_dir + p.arrival_dir).norm(), 0.0, 1e-12);
  }
}

TEST(Tracer, LosAndGroundGainsAreReciprocal) {
  const Scene s = flat();
  const auto paths = trace(s, {0, 0, 5}, {20, 7, 1}, config(1));
  for (const auto& p : paths) {
    const double fwd = std::abs(path_gain(p, s, 28.0).amplitude);
    const double back = std::abs(path_gain(reversed(p), s, 28.0).amplitude);
    EXPECT_NEAR(fwd / back, 1.0, 1e-12);
  }
}

TEST(Tracer, DiffractionFillsGeometricShadow) {
  const Scene s = bundled("single-wall");
  // Wall spans x in [10, 11], y in [-20, 20], 15 m high. The receiver sits
  // behind it, reachable by a single diffraction on the corner at (10, 20).
  const Vec3 tx(0, 0, 2), rx(20, 25, 2);
  EXPECT_TRUE(trace(s, tx, rx, config(1)).empty());
  const auto d = trace(s, tx, rx, config(1, 1));
  ASSERT_FALSE(d.empty());
  for (const auto& p : d) {
    ASSERT_EQ(p.diffraction_count(), 1);
    // Keller cone: equal angles with the edge on both sides.
    std::size_t k = 0;
    while (p.interactions[k].kind != InteractionKind::diffraction) ++k;
    const Edge& e = s.edge(p.interactions[k].id);
    const Vec3 in = (p.vertices[k + 1] - p.vertices[k]).normalized();
    const Vec3 out = (p.vertices[k + 2] - p.vertices[k + 1]).normalized();
    EXPECT_NEAR(in.dot(e.direction), out.dot(e.direction), 1e-9);
    EXPECT_GT(std::abs(path_gain(p, s, 28.0).amplitude), 0.0);
  }
}

TEST(Tracer, ConfigValidation) {
  TraceConfig c;
  c.max_reflections = 9;
  EXPECT_THROW(c.validate(), ConfigError);
  c = TraceConfig{};
  c.max_diffractions = 2;
  EXPECT_THROW(c.validate(), ConfigError);
  c = TraceConfig{};
  c.angular_resolution = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Tracer, IcosphereGrid) {
  const DirectionGrid g = icosphere_directions(deg2rad(2.0));
  const std::size_t n = g.directions.size();
  // 10 f^2 + 2 directions
  const double f = std::sqrt((static_cast<double>(n) - 2.0) / 10.0);
  EXPECT_NEAR(f, std::round(f), 1e-9);
  EXPECT_LE(g.spacing, deg2rad(2.0));
  for (const Vec3& d : g.directions) EXPECT_NEAR(d.norm(), 1.0, 1e-12);
}

TEST(PathFilter, ParseAndMatch) {
  for (auto f : {PathFilter::all, PathFilter::los_only, PathFilter::los_and_ground, PathFilter::exclude_los})
    EXPECT_EQ(parse_path_filter(to_string(f)), f);
  EXPECT_THROW(parse_path_filter("walls"), ConfigError);
  const Scene s = bundled("single-wall");
  const auto paths = trace(s, {0, -3, 4}, {2, 6, 1.5}, config(2));
  const auto lg = filter_paths(s, paths, PathFilter::los_and_ground);
  ASSERT_EQ(lg.size(), 2u);
  EXPECT_TRUE(lg[0].is_los());
  EXPECT_EQ(interaction_string(s, lg[1]), "R:ground");
  for (const auto& p : filter_paths(s, paths, PathFilter::exclude_los)) EXPECT_FALSE(p.is_los());
  EXPECT_EQ(filter_paths(s, paths, PathFilter::los_only).size(), 1u);
}
