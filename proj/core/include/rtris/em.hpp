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

// Per-ray field computation.
//
// Conventions used everywhere in the library:
//  * time dependence exp(+j w t): a wave travelling a distance d picks up
//    exp(-j k d) and lossy media have eps = eps' - j eps'' with eps'' >= 0;
//  * amplitudes are field ratios normalised to an isotropic antenna, so a
//    free-space path of length d has amplitude lambda / (4 pi d);
//  * both end antennas are isotropic and the transmitter radiates the Jones
//    vector (1/sqrt2, 1/sqrt2) in its local (vertical, horizontal) frame.

#include <span>

#include "rtris/geometry.hpp"

namespace rtris {

class Scene;
struct PropagationPath;

/// Fresnel reflection coefficients.
///
/// `perp` applies to the field component perpendicular to the plane of
/// incidence. `par` applies to the in-plane component expressed in the basis
/// p = s x k, where s is the perpendicular unit vector and k the propagation
/// direction (before or after reflection respectively). In this basis both
/// coefficients tend to -1 at grazing incidence, and at normal incidence
/// par = -perp, which is the same physical field reversal for both
/// polarisations because p flips with k.
struct FresnelPair {
  cdouble perp;
  cdouble par;
};

/// Fresnel coefficients for a plane wave hitting a half-space of relative
/// permittivity `eps` at `incidence` radians from the normal, in [0, pi/2].
/// The square-root branch is chosen so the transmitted wave decays.
FresnelPair fresnel(cdouble eps, double incidence);

/// Free-space amplitude (lambda / (4 pi d)) exp(-j 2 pi d / lambda).
/// Throws DomainError for d <= 0.
cdouble free_space_gain(double distance_m, double freq_ghz);

/// Transverse field carried by a ray: two complex components on an
/// orthonormal basis perpendicular to the propagation direction.
struct JonesField {
  Vec3 direction = Vec3::UnitX();
  Vec3 basis_a = Vec3::UnitZ();
  Vec3 basis_b = Vec3::UnitY();
  cdouble a;
  cdouble b;

  CVec3 vector() const { return a * basis_a.cast<cdouble>() + b * basis_b.cast<cdouble>(); }
  double magnitude() const { return std::sqrt(std::norm(a) + std::norm(b)); }
  /// Components on another orthonormal basis spanning the same transverse plane.
  std::pair<cdouble, cdouble> project(const Vec3& u, const Vec3& v) const;
};

/// (vertical, horizontal) unit vectors for a propagation direction:
/// h = normalize(z x d) (x axis when d is vertical) and v = h x d.
std::pair<Vec3, Vec3> vertical_horizontal_frame(const Vec3& direction);

/// Field leaving the transmitter along `direction`: (1/sqrt2, 1/sqrt2) on
/// the (vertical, horizontal) frame, unit magnitude.
JonesField transmitter_field(const Vec3& direction);

/// Specular reflection of `field` at a surface with unit normal `normal`.
/// The field is rotated into the plane-of-incidence basis, scaled by
/// (perp, par) and returned on the reflected (s, s x k_r) basis.
/// Throws GeometryError when the ray travels parallel to the surface.
JonesField apply_reflection(const JonesField& field, const FresnelPair& pair, const Vec3& normal);

/// Incidence angle (from the normal) of direction d on a plane with unit normal n.
double incidence_angle(const Vec3& d, const Vec3& n);

/// Complex amplitude and delay of a single propagation path.
struct PathGain {
  cdouble amplitude;
  double delay_s = 0.0;
};

/// Receiver-side reduction of a Jones field to a scalar: Euclidean magnitude
/// of the components on the receiver's (vertical, horizontal) frame, carrying
/// the phase of their projection onto the transmit polarisation.
cdouble receive_scalar(const JonesField& field);

/// Amplitude of a traced path: spreading, reflection Jones operators and
/// diffraction coefficients, reduced by receive_scalar.
PathGain path_gain(const PropagationPath& path, const Scene& scene, double freq_ghz);

/// Coherent sum of path gains.
cdouble coherent_sum(std::span<const PropagationPath> paths, const Scene& scene, double freq_ghz);

}  // namespace rtris
