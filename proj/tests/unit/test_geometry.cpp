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

#include "rtris/error.hpp"
#include "rtris/geo.hpp"
#include "rtris/scene.hpp"

using namespace rtris;
using nlohmann::json;

namespace {

json box_scene(double x0, double x1, double y0, double y1, double h, const char* mat = "brick") {
  return {{"schema", 1},
          {"ground", {{"material", "concrete"}}},
          {"buildings",
           {{{"footprint", {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}}, {"height", h}, {"material", mat}}}}};
}

}  // namespace

TEST(Geo, AnchorMapsToOrigin) {
  const GeoAnchor a{3.07351, 101.58633};
  const Vec2 p = geo_to_local(a, a);
  EXPECT_EQ(p, Vec2::Zero());
}

TEST(Geo, LatitudeStepIsNorthward) {
  const GeoAnchor a{3.07351, 101.58633};
  const Vec2 p = geo_to_local(a, {a.latitude_deg + 2.5e-6, a.longitude_deg});
  EXPECT_NEAR(p.x(), 0.0, 1e-12);
  EXPECT_NEAR(p.y(), 2.5e-6 * kMetersPerDegree, 1e-9);
}

TEST(Geo, LongitudeShrinksWithLatitude) {
  const GeoAnchor a{60.0, 10.0};
  const Vec2 p = geo_to_local(a, {60.0, 10.001});
  EXPECT_NEAR(p.x(), 0.001 * 0.5 * kMetersPerDegree, 1e-9);
}

TEST(Geo, RejectsFarPointsAndBadAnchors) {
  EXPECT_THROW(geo_to_local({0.0, 0.0}, {0.5, 0.0}), DomainError);
  EXPECT_THROW(geo_to_local({95.0, 0.0}, {95.0, 0.0}), DomainError);
}

TEST(Scene, FacesAndEdgesOfABox) {
  const Scene s = scene_from_json(box_scene(0, 10, 0, 5, 8));
  // ground + four walls + roof
  ASSERT_EQ(s.faces().size(), 6u);
  EXPECT_EQ(s.faces()[0].kind, FaceKind::ground);
  // four vertical edges and four roof edges, all right-angle wedges
  ASSERT_EQ(s.edges().size(), 8u);
  for (const Edge& e : s.edges()) EXPECT_NEAR(e.wedge_n, 1.5, 1e-12);
}

TEST(Scene, WallNormalsPointOutwards) {
  const Scene s = scene_from_json(box_scene(0, 10, 0, 5, 8));
  const Vec3 centre(5, 2.5, 4);
  for (const Face& f : s.faces()) {
    if (f.kind != FaceKind::wall) continue;
    const Vec3 on_face = f.origin + 0.5 * f.width * f.tangent + 0.5 * f.height * Vec3::UnitZ();
    EXPECT_GT(f.plane.normal.dot(on_face - centre), 0.0);
  }
}

TEST(Scene, ClockwiseFootprintIsNormalised) {
  const auto ccw = normalize_footprint({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
  double area = 0.0;
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    const Vec2& a = ccw[i];
    const Vec2& b = ccw[(i + 1) % ccw.size()];
    area += a.x() * b.y() - b.x() * a.y();
  }
  EXPECT_GT(area, 0.0);
}

TEST(Scene, RejectsDegenerateFootprints) {
  EXPECT_THROW(normalize_footprint({{0, 0}, {1, 0}}), SceneError);
  EXPECT_THROW(normalize_footprint({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), SceneError);
}

TEST(Scene, InsideAndBlocking) {
  const Scene s = scene_from_json(box_scene(0, 10, 0, 5, 8));
  EXPECT_TRUE(s.inside_building({5, 2, 1}));
  EXPECT_FALSE(s.inside_building({5, 2, 9}));
  EXPECT_TRUE(s.inside_building({20, 2, -0.1}));
  EXPECT_TRUE(s.segment_blocked({-5, 2, 1}, {15, 2, 1}));
  EXPECT_FALSE(s.segment_blocked({-5, 2, 9}, {15, 2, 9}));
  EXPECT_FALSE(s.segment_blocked({-5, -1, 1}, {15, -1, 1}));
}

TEST(Scene, IntersectFindsNearestWall) {
  const Scene s = scene_from_json(box_scene(0, 10, 0, 5, 8));
  const auto hit = s.intersect({-5, 2, 1}, Vec3::UnitX(), 100.0);
  ASSERT_TRUE(hit.has_value());
  EXPECT_NEAR(hit->t, 5.0, 1e-12);
  EXPECT_EQ(s.face(hit->face).kind, FaceKind::wall);
}

TEST(Scene, SchemaIsMandatory) {
  json doc = box_scene(0, 1, 0, 1, 1);
  doc.erase("schema");
  EXPECT_THROW(scene_from_json(doc), SceneError);
  doc["schema"] = 2;
  EXPECT_THROW(scene_from_json(doc), SceneError);
}

TEST(Scene, UnknownMaterialIsASceneError) {
  EXPECT_THROW(scene_from_json(box_scene(0, 1, 0, 1, 1, "unobtainium")), SceneError);
}

TEST(Scene, InlineMaterialsOverrideLibrary) {
  json doc = box_scene(0, 1, 0, 1, 1, "plaster");
  doc["materials"] = {{"plaster", {{"a", 2.94}, {"b", 0.0}, {"c", 0.0116}, {"d", 0.7076}, {"fmin_ghz", 1.0},
                                   {"fmax_ghz", 100.0}}}};
  const Scene s = scene_from_json(doc);
  EXPECT_EQ(s.buildings()[0].material.name, "plaster");
}

TEST(Scene, GeographicFootprintNeedsAnchor) {
  json doc = {{"schema", 1},
              {"ground", {{"material", "concrete"}}},
              {"buildings",
               {{{"footprint_geo", {{3.0, 101.0}, {3.0, 101.0001}, {3.0001, 101.0001}}},
                 {"height", 5},
                 {"material", "brick"}}}}};
  EXPECT_THROW(scene_from_json(doc), SceneError);
  doc["anchor"] = {{"lat", 3.0}, {"lon", 101.0}};
  const Scene s = scene_from_json(doc);
  EXPECT_EQ(s.buildings().size(), 1u);
}

TEST(Scene, BundledScenesLoad) {
  for (const char* name : {"suburb-28ghz", "single-wall", "parallel-walls", "parallel-walls-blocked"}) {
    const Scene s = load_scene(resolve_scene_path(name, {}));
    EXPECT_FALSE(s.buildings().empty()) << name;
  }
  EXPECT_THROW(resolve_scene_path("no-such-scene", {}), SceneError);
}

TEST(Scene, BundledSuburbHasNoOverlappingBuildings) {
  const Scene s = load_scene(resolve_scene_path("suburb-28ghz", {}));
  auto inside = [](const std::vector<Vec2>& f, const Vec2& p) {
    bool in = false;
    for (std::size_t k = 0, l = f.size() - 1; k < f.size(); l = k++)
      if ((f[k].y() > p.y()) != (f[l].y() > p.y()) &&
          p.x() < (f[l].x() - f[k].x()) * (p.y() - f[k].y()) / (f[l].y() - f[k].y()) + f[k].x())
        in = !in;
    return in;
  };
  const auto& b = s.buildings();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (i != j) {
        for (const Vec2& p : b[j].footprint) EXPECT_FALSE(inside(b[i].footprint, p)) << i << " " << j;
      }
}
