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

#include "rtris/em.hpp"

#include <string>

#include "rtris/error.hpp"
#include "rtris/scene.hpp"
#include "rtris/tracer.hpp"
#include "rtris/utd.hpp"

namespace rtris {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// exp(-j 2 pi d / lambda) with the integer number of wavelengths removed
// before the trig call.
cdouble propagation_phasor(double distance_m, double lambda) {
  const double cycles = distance_m / lambda;
  const double frac = cycles - std::floor(cycles);
  return std::polar(1.0, -kTwoPi * frac);
}

}  // namespace

FresnelPair fresnel(cdouble eps, double incidence) {
  if (!(incidence >= 0.0 && incidence <= 0.5 * kPi + 1e-12))
    throw DomainError("incidence angle must lie in [0, pi/2], got " + std::to_string(incidence));
  if (eps.imag() > 0.0)
    throw DomainError("permittivity must satisfy Im(eps) <= 0 under exp(+jwt)");
  const double st = std::sin(incidence);
  const double ct = std::max(0.0, std::cos(incidence));
  cdouble root = std::sqrt(eps - st * st);
  if (root.imag() > 0.0) root = -root;
  const cdouble den_perp = ct + root;
  const cdouble den_par = eps * ct + root;
  if (std::abs(den_perp) == 0.0 || std::abs(den_par) == 0.0) return {0.0, 0.0};
  return {(ct - root) / den_perp, (eps * ct - root) / den_par};
}

cdouble free_space_gain(double distance_m, double freq_ghz) {
  if (!(distance_m > 0.0)) throw DomainError("free-space distance must be positive");
  const double lambda = wavelength(freq_ghz);
  return (lambda / (4.0 * kPi * distance_m)) * propagation_phasor(distance_m, lambda);
}

std::pair<cdouble, cdouble> JonesField::project(const Vec3& u, const Vec3& v) const {
  return {a * basis_a.dot(u) + b * basis_b.dot(u), a * basis_a.dot(v) + b * basis_b.dot(v)};
}

std::pair<Vec3, Vec3> vertical_horizontal_frame(const Vec3& direction) {
  Vec3 h = Vec3::UnitZ().cross(direction);
  if (h.norm() < 1e-12)
    h = Vec3::UnitX();
  else
    h.normalize();
  Vec3 v = h.cross(direction).normalized();
  return {v, h};
}

JonesField transmitter_field(const Vec3& direction) {
  const Vec3 d = direction.normalized();
  auto [v, h] = vertical_horizontal_frame(d);
  return {d, v, h, kInvSqrt2, kInvSqrt2};
}

double incidence_angle(const Vec3& d, const Vec3& n) {
  return std::acos(std::min(1.0, std::abs(d.dot(n))));
}

JonesField apply_reflection(const JonesField& field, const FresnelPair& pair, const Vec3& normal) {
  const Vec3& k = field.direction;
  if (std::abs(k.dot(normal)) < 1e-12)
    throw GeometryError("reflection with propagation parallel to the surface");
  Vec3 s = k.cross(normal);
  if (s.norm() < 1e-12)
    s = field.basis_b;  // normal incidence: any transverse axis will do
  s.normalize();
  const Vec3 p_in = s.cross(k);
  const Vec3 k_out = reflect_direction(k, normal).normalized();
  const Vec3 p_out = s.cross(k_out);
  auto [e_s, e_p] = field.project(s, p_in);
  return {k_out, s, p_out, pair.perp * e_s, pair.par * e_p};
}

cdouble receive_scalar(const JonesField& field) {
  auto [v, h] = vertical_horizontal_frame(field.direction);
  auto [jv, jh] = field.project(v, h);
  const double mag = std::sqrt(std::norm(jv) + std::norm(jh));
  if (mag == 0.0) return 0.0;
  const cdouble ref = (jv + jh) * kInvSqrt2;
  double phase;
  if (std::abs(ref) > 1e-12 * mag)
    phase = std::arg(ref);
  else
    phase = std::arg(std::abs(jv) >= std::abs(jh) ? jv : jh);
  return std::polar(mag, phase);
}

PathGain path_gain(const PropagationPath& path, const Scene& scene, double freq_ghz) {
  const auto& pts = path.vertices;
  if (pts.size() != path.interactions.size() + 2)
    throw GeometryError("path vertex count does not match its interactions");
  const double lambda = wavelength(freq_ghz);

  std::vector<Vec3> dirs;
  std::vector<double> seg_len;
  dirs.reserve(pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Vec3 d = pts[i + 1] - pts[i];
    const double len = d.norm();
    if (!(len > 0.0)) throw GeometryError("zero-length path segment");
    dirs.push_back(d / len);
    seg_len.push_back(len);
  }
  double total = 0.0;
  for (double l : seg_len) total += l;

  JonesField field = transmitter_field(dirs.front());
  double spreading_length = total;  // unfolded length seen by the 1/r spreading
  double travelled = 0.0;
  for (std::size_t i = 0; i < path.interactions.size(); ++i) {
    travelled += seg_len[i];
    const Interaction& it = path.interactions[i];
    const Vec3& in = dirs[i];
    const Vec3& out = dirs[i + 1];
    if (it.kind == InteractionKind::reflection) {
      const Face& f = scene.face(it.id);
      const cdouble eps = itu_permittivity(scene.face_material(it.id), freq_ghz);
      const FresnelPair pair = fresnel(eps, incidence_angle(in, f.plane.normal));
      field = apply_reflection(field, pair, f.plane.normal);
      field.direction = out;
    } else {
      const Edge& e = scene.edge(it.id);
      WedgeSpec wedge;
      wedge.wedge_n = e.wedge_n;
      wedge.eps0 = itu_permittivity(scene.face_material(e.face0), freq_ghz);
      wedge.epsn = itu_permittivity(scene.face_material(e.facen), freq_ghz);
      const double phi_inc = e.angle_of(-in);
      const double phi = e.angle_of(out);
      const double beta0 = std::acos(std::clamp(in.dot(e.direction), -1.0, 1.0));
      const double s_inc = travelled;
      const double s_diff = total - travelled;
      const DiffractionFactor factor = utd_diffraction(wedge, phi_inc, phi, beta0, s_inc, s_diff, freq_ghz);
      field = apply_diffraction(field, e.direction, out, factor);
      spreading_length = s_inc;
    }
  }
  const cdouble base = (lambda / (4.0 * kPi * spreading_length)) * propagation_phasor(total, lambda);
  return {base * receive_scalar(field), total / kSpeedOfLight};
}

cdouble coherent_sum(std::span<const PropagationPath> paths, const Scene& scene, double freq_ghz) {
  cdouble h = 0.0;
  for (const auto& p : paths) h += path_gain(p, scene, freq_ghz).amplitude;
  return h;
}

}  // namespace rtris
