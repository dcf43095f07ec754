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

#include <numeric>
#include <random>
#include <set>

#include "rtris/error.hpp"
#include "rtris/ris.hpp"

using namespace rtris;

namespace {

std::vector<cdouble> random_channel(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cdouble> h(static_cast<std::size_t>(n));
  for (auto& v : h) v = {g(rng), g(rng)};
  return h;
}

}  // namespace

TEST(Panel, SquareLayoutAtHalfWavelength) {
  const RisPanel p = RisPanel::square({1, 2, 5}, deg2rad(30.0), deg2rad(-3.0), 1024, 28.0);
  EXPECT_EQ(p.rows, 32);
  EXPECT_EQ(p.cols, 32);
  EXPECT_NEAR(p.spacing, wavelength(28.0) / 2, 1e-15);
  const auto off = p.element_offsets();
  ASSERT_EQ(off.size(), 1024u);
  const Vec3 sum = std::accumulate(off.begin(), off.end(), Vec3(Vec3::Zero()));
  EXPECT_NEAR(sum.norm(), 0.0, 1e-12);
  EXPECT_NEAR((off[1] - off[0]).norm(), p.spacing, 1e-15);
  EXPECT_NEAR((off[32] - off[0]).norm(), p.spacing, 1e-15);
}

TEST(Panel, AxesAreOrthonormalAndColumnsHorizontal) {
  const RisPanel p = RisPanel::square(Vec3::Zero(), deg2rad(120.0), deg2rad(-3.0), 16, 28.0);
  const Vec3 n = p.normal(), u = p.column_axis(), v = p.row_axis();
  EXPECT_NEAR(n.norm(), 1.0, 1e-15);
  EXPECT_NEAR(n.dot(u), 0.0, 1e-15);
  EXPECT_NEAR(n.dot(v), 0.0, 1e-15);
  EXPECT_NEAR(u.z(), 0.0, 1e-15);
  EXPECT_NEAR(rad2deg(azimuth_of(n)), 120.0, 1e-12);
  EXPECT_NEAR(rad2deg(elevation_of(n)), -3.0, 1e-12);
}

TEST(Panel, RejectsNonSquareSizes) {
  EXPECT_THROW(RisPanel::square(Vec3::Zero(), 0.0, 0.0, 1000, 28.0), ConfigError);
  RisPanel p;
  p.spacing = 0.0;
  EXPECT_THROW(p.validate(), ConfigError);
}

TEST(Panel, SegmentCrossing) {
  const RisPanel p = RisPanel::square({0, 0, 5}, 0.0, 0.0, 1024, 28.0);
  EXPECT_TRUE(p.segment_crosses({-1, 0, 5}, {1, 0.01, 5}));
  EXPECT_FALSE(p.segment_crosses({-1, 1, 5}, {1, 1, 5}));
  EXPECT_FALSE(p.segment_crosses({0.5, 0, 5}, {1, 0, 5}));
}

TEST(Panel, ElementPatternIsHalfSpace) {
  const RisPanel p = RisPanel::square(Vec3::Zero(), 0.0, 0.0, 16, 28.0);
  EXPECT_EQ(element_pattern(p, Vec3(1, 0.3, 0).normalized()), 1.0);
  EXPECT_EQ(element_pattern(p, Vec3(-1, 0.3, 0).normalized()), 0.0);
}

TEST(Steering, PhaseMatchesExactPathDifferenceInFarField) {
  const RisPanel p = RisPanel::square(Vec3::Zero(), 0.0, 0.0, 64, 28.0);
  const Vec3 u = Vec3(0.8, 0.5, 0.1).normalized();
  const auto sv = steering_phase(p, u, 28.0);
  const auto off = p.element_offsets();
  const double k = wavenumber(28.0);
  for (std::size_t n = 0; n < sv.size(); ++n) {
    EXPECT_NEAR(std::abs(sv[n]), 1.0, 1e-15);
    EXPECT_NEAR(wrap_phase(std::arg(sv[n]) - k * off[n].dot(u)), 0.0, 1e-12);
  }
}

TEST(SegmentChannel, BackArrivalsAreRejected) {
  const RisPanel p = RisPanel::square(Vec3::Zero(), 0.0, 0.0, 16, 28.0);
  const std::vector<cdouble> g = {cdouble(1e-3), cdouble(2e-3)};
  const std::vector<Vec3> d = {Vec3::UnitX(), -Vec3::UnitX()};
  const SegmentChannel ch = segment_channel(g, d, p, 28.0);
  ASSERT_EQ(ch.arrivals.size(), 2u);
  EXPECT_TRUE(ch.arrivals[0].accepted);
  EXPECT_FALSE(ch.arrivals[1].accepted);
  for (const auto& h : ch.per_element) EXPECT_NEAR(std::abs(h), 1e-3, 1e-15);
}

TEST(Coefficients, OptimalIsTheAligningPhase) {
  std::mt19937_64 rng(3);
  const auto ht = random_channel(rng, 16), hr = random_channel(rng, 16);
  const RisCoefficients c = optimal_coeffs(ht, hr);
  for (std::size_t n = 0; n < ht.size(); ++n) {
    EXPECT_GE(c.phases[n], -kPi);
    EXPECT_LT(c.phases[n], kPi);
    EXPECT_NEAR(wrap_phase(c.phases[n] + std::arg(ht[n]) + std::arg(hr[n])), 0.0, 1e-12);
  }
}

TEST(Coefficients, OptimalAchievesMagnitudeSumAndBeatsRandom) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto ht = random_channel(rng, 64), hr = random_channel(rng, 64);
    double bound = 0.0;
    for (std::size_t n = 0; n < ht.size(); ++n) bound += std::abs(ht[n]) * std::abs(hr[n]);
    const double best = std::abs(cascade(ht, hr, optimal_coeffs(ht, hr).phases));
    EXPECT_NEAR(best / bound, 1.0, 1e-12);
    for (int k = 0; k < 20; ++k)
      EXPECT_LE(std::abs(cascade(ht, hr, random_coeffs(64, rng()).phases)), best * (1 + 1e-12));
  }
}

TEST(Coefficients, ZeroTermsGetZeroPhase) {
  const std::vector<cdouble> ht = {0.0, cdouble(0.0, 1.0)}, hr = {cdouble(1.0), cdouble(1.0)};
  EXPECT_EQ(optimal_coeffs(ht, hr).phases[0], 0.0);
}

TEST(Coefficients, UnitPolicyIsIdentity) {
  const RisCoefficients c = unit_coeffs(9);
  for (double p : c.phases) EXPECT_EQ(p, 0.0);
  EXPECT_THROW(unit_coeffs(0), DomainError);
}

TEST(Coefficients, RandomPhasesAreSeededAndUniform) {
  const auto a = random_coeffs(20000, 42), b = random_coeffs(20000, 42), c = random_coeffs(20000, 43);
  EXPECT_EQ(a.phases, b.phases);
  EXPECT_NE(a.phases, c.phases);
  double mean = 0.0, var = 0.0;
  for (double p : a.phases) {
    EXPECT_GE(p, -kPi);
    EXPECT_LT(p, kPi);
    mean += p;
    var += p * p;
  }
  mean /= a.phases.size();
  var /= a.phases.size();
  EXPECT_NEAR(mean, 0.0, 0.05);
  EXPECT_NEAR(var, kPi * kPi / 3.0, 0.1);
}

TEST(Coefficients, PointSeedsAreDistinctAndStable) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(point_seed(1, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(point_seed(7, 3), point_seed(7, 3));
  EXPECT_NE(point_seed(7, 3), point_seed(8, 3));
}

TEST(Coefficients, CascadeLengthMismatchThrows) {
  const std::vector<cdouble> a(3), b(4);
  const std::vector<double> p(3);
  EXPECT_THROW(cascade(a, b, p), DomainError);
}

TEST(Coefficients, PolicyNames) {
  for (auto p : {CoefficientPolicy::optimal, CoefficientPolicy::unit, CoefficientPolicy::random})
    EXPECT_EQ(parse_policy(to_string(p)), p);
  EXPECT_THROW(parse_policy("greedy"), ConfigError);
}
