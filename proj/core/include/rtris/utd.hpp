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

// Uniform theory of diffraction (Kouyoumjian-Pathak) for straight wedges,
// with Luebbers' heuristic face reflection coefficients for lossy dielectric
// faces. Angles follow the usual wedge convention: phi measured from face 0
// through free space, face n at n*pi, n = exterior angle / pi.

#include "rtris/em.hpp"
#include "rtris/geometry.hpp"

namespace rtris {

struct Edge;

struct FresnelIntegrals {
  double c = 0.0;  // int_0^x cos(pi t^2 / 2) dt
  double s = 0.0;  // int_0^x sin(pi t^2 / 2) dt
};

FresnelIntegrals fresnel_integrals(double x);

/// UTD transition function F(X) = 2j sqrt(X) e^{jX} int_{sqrt X}^inf e^{-j tau^2} d tau, X >= 0.
cdouble utd_transition(double x);

/// Reflection coefficients of the two wedge faces for the soft (E parallel
/// to the edge plane, beta) and hard (phi) components.
struct WedgeReflections {
  cdouble r0_soft = -1.0;
  cdouble rn_soft = -1.0;
  cdouble r0_hard = 1.0;
  cdouble rn_hard = 1.0;

  static WedgeReflections conducting() { return {}; }
};

/// Wedge described by its exterior angle factor n and face permittivities.
struct WedgeSpec {
  double wedge_n = 1.5;
  cdouble eps0 = 1.0;
  cdouble epsn = 1.0;
  bool perfect_conductor = false;

  static WedgeSpec from_interior_angle(double interior_rad, cdouble eps0, cdouble epsn) {
    return {(kTwoPi - interior_rad) / kPi, eps0, epsn, false};
  }
};

/// Luebbers' heuristic: face 0 evaluated at grazing angle phi_inc, face n at
/// grazing angle n*pi - phi.
WedgeReflections wedge_reflections(const WedgeSpec& wedge, double phi, double phi_inc);

struct UtdCoefficients {
  cdouble soft;
  cdouble hard;
};

/// Diffraction coefficients D_s, D_h (units of sqrt(m)).
///  phi, phi_inc : observation / incidence wedge angles in (0, n pi)
///  beta0        : angle between incident ray and edge, (0, pi)
///  distance_l   : UTD distance parameter L (m)
///  k            : wavenumber (rad/m)
/// Shadow and reflection boundaries are finite thanks to the transition
/// function; exactly on a boundary the cot*F product uses its limit.
UtdCoefficients utd_coefficients(double wedge_n, double phi, double phi_inc, double beta0,
                                 double distance_l, double k, const WedgeReflections& refl);

/// Edge-diffraction spreading sqrt(s' / (s (s + s'))) for spherical incidence.
double edge_spreading(double s_inc, double s_diff);

/// Amplitude factor of a single diffraction for each polarisation:
/// coefficient times spreading, without the propagation phase.
struct DiffractionFactor {
  cdouble soft;
  cdouble hard;
};

/// Diffraction factor for spherical-wave incidence at distance s_inc from the
/// edge, observed at distance s_diff.
DiffractionFactor utd_diffraction(const WedgeSpec& wedge, double phi_inc, double phi, double beta0,
                                  double s_inc, double s_diff, double freq_ghz);

/// Applies an edge diffraction to a Jones field: components on the incident
/// edge-fixed basis (beta0', phi') map to (beta0, phi) on the diffracted ray,
/// E_beta = -D_s E_beta', E_phi = -D_h E_phi'. Spreading must already be
/// folded into the factor.
JonesField apply_diffraction(const JonesField& field, const Vec3& edge_dir, const Vec3& diffracted_dir,
                             const DiffractionFactor& factor);

}  // namespace rtris
