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

#include "rtris/analysis.hpp"
#include "rtris/channel.hpp"
#include "rtris/error.hpp"

using namespace rtris;

namespace {

Scene flat() { return ground_only_scene(*MaterialLibrary::defaults().find("concrete")); }

TraceConfig los_only() {
  TraceConfig c;
  c.max_reflections = 0;
  return c;
}

}  // namespace

TEST(Channel, ZeroAmplitudeIsMinusInfinity) {
  EXPECT_EQ(received_power_dbm(0.0, 30.0), -std::numeric_limits<double>::infinity());
  EXPECT_NEAR(received_power_dbm(0.1, 30.0), 10.0, 1e-12);
}

TEST(Channel, FreeSpaceLinkWithoutPanel) {
  const Scene s = flat();
  const ChannelReport r = evaluate(s, {0, 0, 5}, {40, 0, 5}, nullptr, los_only(), {}, 28.0, 30.0);
  EXPECT_EQ(r.n_paths_los, 1);
  EXPECT_NEAR(r.p_los_dbm, 30.0 + friis_gain_db(40.0, 28.0), 1e-10);
  EXPECT_EQ(r.p_ris_dbm, -std::numeric_limits<double>::infinity());
  EXPECT_EQ(r.p_total_dbm, r.p_los_dbm);
}

TEST(Channel, TotalIsCoherentSum) {
  const Scene s = flat();
  const RisPanel panel = RisPanel::square({10, 5, 5}, deg2rad(-90.0), 0.0, 256, 28.0);
  const ChannelReport r =
      evaluate(s, {0, 0, 5}, {20, 0, 5}, &panel, los_only(), {CoefficientPolicy::optimal, 0}, 28.0, 30.0);
  EXPECT_NEAR(std::abs(r.h_total - (r.h_los + r.h_ris)), 0.0, 1e-20);
  EXPECT_EQ(r.n_paths_t, 1);
  EXPECT_EQ(r.n_paths_r, 1);
  const double ref = ris_cascade_closed_form(256, std::hypot(10.0, 5.0), std::hypot(10.0, 5.0), 28.0);
  EXPECT_NEAR(20.0 * std::log10(std::abs(r.h_ris) / ref), 0.0, 1e-9);
}

TEST(Channel, PanelBehindEndpointsContributesNothing) {
  const Scene s = flat();
  // Boresight points away from both ends.
  const RisPanel panel = RisPanel::square({10, 5, 5}, deg2rad(90.0), 0.0, 16, 28.0);
  const ChannelReport r =
      evaluate(s, {0, 0, 5}, {20, 0, 5}, &panel, los_only(), {CoefficientPolicy::optimal, 0}, 28.0, 30.0);
  EXPECT_EQ(r.p_ris_dbm, -std::numeric_limits<double>::infinity());
}

TEST(Channel, DirectPathsThroughThePanelAreDropped) {
  const Scene s = flat();
  const RisPanel panel = RisPanel::square({10, 0, 5}, 0.0, 0.0, 1024, 28.0);
  auto paths = trace(s, {0, 0, 5}, {20, 0, 5}, los_only());
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_TRUE(direct_paths(s, paths, &panel, PathFilter::all).empty());
  EXPECT_EQ(direct_paths(s, paths, nullptr, PathFilter::all).size(), 1u);
}

TEST(Channel, PoliciesOnOneGeometry) {
  const Scene s = flat();
  const RisPanel panel = RisPanel::square({10, 5, 5}, deg2rad(-90.0), 0.0, 64, 28.0);
  const auto t = trace(s, {0, 0, 5}, panel.center, los_only());
  const auto r = trace(s, panel.center, {20, 0, 5}, los_only());
  const LinkGeometry link = assemble_link(s, 28.0, {}, &panel, t, r);
  const auto opt = make_coefficients(link, {CoefficientPolicy::optimal, 0});
  const auto rnd = make_coefficients(link, {CoefficientPolicy::random, 9});
  EXPECT_GE(std::abs(cascade(link.ht, link.hr, opt)), std::abs(cascade(link.ht, link.hr, rnd)));
  EXPECT_EQ(rnd.phases, random_coeffs(64, 9).phases);
  LinkGeometry bare;
  EXPECT_THROW(make_coefficients(bare, {}), DomainError);
}
