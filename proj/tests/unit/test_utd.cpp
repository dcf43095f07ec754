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
#include "rtris/utd.hpp"

using namespace rtris;

namespace {

struct FresnelRef {
  double x, c, s;
};

// scipy.special.fresnel, see tests/oracles/em_oracles.py.
constexpr FresnelRef kFresnel[] = {
    {0.3, 0.2994009760520472, 0.014116998006576587}, {1.0, 0.779893400376823, 0.4382591473903547},
    {1.4, 0.5430957835462566, 0.7135250773634121},   {1.6, 0.36546168344048763, 0.6388876835093806},
    {2.5, 0.45741300964177706, 0.6191817558195929},  {7.0, 0.5454670925469698, 0.49970478945344676},
};

struct TransitionRef {
  double x, re, im;
};

constexpr TransitionRef kTransition[] = {
    {0.001, 0.039594953226235711, 0.037672886959129088},
    {0.5, 0.67676270669041338, 0.26823295338462845},
    {3.0, 0.94724225874107055, 0.13257826183062645},
    {20.0, 0.99816373823586569, 0.024774135526745917},
};

}  // namespace

TEST(FresnelIntegrals, MatchReferenceAcrossSeriesAndContinuedFraction) {
  for (const auto& r : kFresnel) {
    const FresnelIntegrals f = fresnel_integrals(r.x);
    EXPECT_NEAR(f.c, r.c, 1e-13) << r.x;
    EXPECT_NEAR(f.s, r.s, 1e-13) << r.x;
  }
}

TEST(FresnelIntegrals, OddSymmetry) {
  const FresnelIntegrals a = fresnel_integrals(1.3), b = fresnel_integrals(-1.3);
  EXPECT_DOUBLE_EQ(a.c, -b.c);
  EXPECT_DOUBLE_EQ(a.s, -b.s);
}

TEST(Transition, MatchesReference) {
  for (const auto& r : kTransition) {
    const cdouble f = utd_transition(r.x);
    EXPECT_NEAR(f.real(), r.re, 1e-12) << r.x;
    EXPECT_NEAR(f.imag(), r.im, 1e-12) << r.x;
  }
}

TEST(Transition, Limits) {
  EXPECT_NEAR(std::abs(utd_transition(1e4) - 1.0), 0.0, 1e-4);
  const double x = 1e-8;
  const cdouble small = std::sqrt(kPi * x) * std::polar(1.0, kPi / 4);
  EXPECT_NEAR(std::abs(utd_transition(x) - small) / std::abs(small), 0.0, 1e-3);
  EXPECT_THROW(utd_transition(-1.0), DomainError);
}

TEST(Utd, ConductingRightAngleWedgeMatchesReference) {
  const double k = wavenumber(28.0);
  const UtdCoefficients d = utd_coefficients(1.5, 2.2, 0.7, kPi / 2, 2.0, k, WedgeReflections::conducting());
  EXPECT_NEAR(d.soft.real(), 0.040461178836585662, 1e-12);
  EXPECT_NEAR(d.soft.imag(), -0.039060565939941537, 1e-12);
  EXPECT_NEAR(d.hard.real(), -0.053391783326471477, 1e-12);
  EXPECT_NEAR(d.hard.imag(), 0.051980885172517159, 1e-12);
}

TEST(Utd, ConductingWedgeIsReciprocal) {
  const double k = wavenumber(28.0);
  const auto a = utd_coefficients(1.5, 2.9, 0.4, 1.1, 3.0, k, WedgeReflections::conducting());
  const auto b = utd_coefficients(1.5, 0.4, 2.9, 1.1, 3.0, k, WedgeReflections::conducting());
  EXPECT_NEAR(std::abs(a.soft - b.soft), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(a.hard - b.hard), 0.0, 1e-14);
}

TEST(Utd, ShadowBoundaryJumpCancelsIncidentField) {
  // Across the incident shadow boundary the coefficient jumps by sqrt(L),
  // which is exactly the unit incident field that disappears there.
  const double k = wavenumber(28.0), phip = 0.6, isb = kPi + phip, l = 5.0;
  const auto at = [&](double phi) {
    return utd_coefficients(1.5, phi, phip, kPi / 2, l, k, WedgeReflections::conducting());
  };
  const auto on = at(isb), lit = at(isb - 1e-7), dark = at(isb + 1e-7);
  EXPECT_TRUE(std::isfinite(std::abs(on.soft)));
  EXPECT_NEAR(std::abs(on.soft - lit.soft), 0.0, 1e-5);
  EXPECT_NEAR(std::abs(on.hard - lit.hard), 0.0, 1e-5);
  EXPECT_NEAR(std::abs(dark.soft - lit.soft - std::sqrt(l)), 0.0, 1e-4);
  EXPECT_NEAR(std::abs(dark.hard - lit.hard - std::sqrt(l)), 0.0, 1e-4);
}

TEST(Utd, LossyFacesUseFresnelCoefficients) {
  WedgeSpec w{1.5, cdouble(5.24, -0.4), cdouble(5.24, -0.4), false};
  const WedgeReflections r = wedge_reflections(w, 2.0, 0.5);
  EXPECT_LT(std::abs(r.r0_soft), 1.0);
  EXPECT_LT(std::abs(r.rn_hard), 1.0);
  w.perfect_conductor = true;
  const WedgeReflections c = wedge_reflections(w, 2.0, 0.5);
  EXPECT_EQ(c.r0_soft, cdouble(-1.0));
  EXPECT_EQ(c.rn_hard, cdouble(1.0));
}

TEST(Utd, RejectsOutOfWedgeAngles) {
  const double k = wavenumber(28.0);
  const auto pec = WedgeReflections::conducting();
  EXPECT_THROW(utd_coefficients(1.5, 5.0, 0.5, kPi / 2, 1.0, k, pec), DomainError);
  EXPECT_THROW(utd_coefficients(2.5, 1.0, 0.5, kPi / 2, 1.0, k, pec), DomainError);
  EXPECT_THROW(utd_coefficients(1.5, 1.0, 0.5, 0.0, 1.0, k, pec), DomainError);
  EXPECT_THROW(edge_spreading(0.0, 1.0), DomainError);
}

TEST(Utd, SpreadingFactor) {
  EXPECT_NEAR(edge_spreading(2.0, 3.0), std::sqrt(2.0 / (3.0 * 5.0)), 1e-15);
}

TEST(Utd, DiffractionKeepsFieldTransverse) {
  const Vec3 e = Vec3::UnitZ();
  const Vec3 in = Vec3(1.0, 0.2, 0.1).normalized();
  const Vec3 out = Vec3(0.3, 1.0, 0.1).normalized();
  const JonesField f = apply_diffraction(transmitter_field(in), e, out, {cdouble(0.5), cdouble(0.25)});
  EXPECT_NEAR(f.basis_a.dot(out), 0.0, 1e-14);
  EXPECT_NEAR(f.basis_b.dot(out), 0.0, 1e-14);
  EXPECT_NEAR(f.basis_a.dot(f.basis_b), 0.0, 1e-14);
  EXPECT_THROW(apply_diffraction(transmitter_field(e), e, out, {cdouble(1.0), cdouble(1.0)}), GeometryError);
}
