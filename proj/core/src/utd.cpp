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


#include "rtris/utd.hpp"

#include <algorithm>
#include <string>

#include "rtris/error.hpp"

namespace rtris {

namespace {

struct FresnelEval {
  double c, s;
  // (1/2 - C, 1/2 - S), evaluated without cancellation for large arguments.
  double cc, sc;
};

// Numerical Recipes: power series for small x, complex continued fraction
// (modified Lentz) above 1.5.
FresnelEval fresnel_eval(double x) {
  constexpr double kEps = 1e-15;
  constexpr double kFpMin = 1e-300;
  constexpr int kMaxIt = 200;
  constexpr double kXMin = 1.5;
  const double ax = std::abs(x);
  FresnelEval r{};
  if (ax < std::sqrt(kFpMin)) {
    r.c = ax;
    r.s = 0.0;
  } else if (ax <= kXMin) {
    double sum = 0.0, sums = 0.0, sumc = ax;
    double sign = 1.0;
    const double fact = 0.5 * kPi * ax * ax;
    bool odd = true;
    double term = ax;
    int n = 3;
    int k = 1;
    for (; k <= kMaxIt; ++k) {
      term *= fact / k;
      sum += sign * term / n;
      const double test = std::abs(sum) * kEps;
      if (odd) {
        sign = -sign;
        sums = sum;
        sum = sumc;
      } else {
        sumc = sum;
        sum = sums;
      }
      if (term < test) break;
      odd = !odd;
      n += 2;
    }
    if (k > kMaxIt) throw Error("fresnel series failed to converge");
    r.c = sumc;
    r.s = sums;
  } else {
    const double pix2 = kPi * ax * ax;
    cdouble b(1.0, -pix2);
    cdouble cc = 1.0 / kFpMin;
    cdouble d = 1.0 / b;
    cdouble h = d;
    int n = -1;
    int k = 2;
    for (; k <= kMaxIt; ++k) {
      n += 2;
      const double a = -static_cast<double>(n) * (n + 1);
      b += 4.0;
      d = 1.0 / (a * d + b);
      cc = b + a / cc;
      const cdouble del = cc * d;
      h *= del;
      if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kEps) break;
    }
    if (k > kMaxIt) throw Error("fresnel continued fraction failed to converge");
    h *= cdouble(ax, -ax);
    const cdouble comp = cdouble(0.5, 0.5) * std::polar(1.0, 0.5 * pix2) * h;
    r.cc = comp.real();
    r.sc = comp.imag();
    r.c = 0.5 - r.cc;
    r.s = 0.5 - r.sc;
    if (x < 0.0) {
      r.c = -r.c;
      r.s = -r.s;
      r.cc = 0.5 - r.c;
      r.sc = 0.5 - r.s;
    }
    return r;
  }
  if (x < 0.0) {
    r.c = -r.c;
    r.s = -r.s;
  }
  r.cc = 0.5 - r.c;
  r.sc = 0.5 - r.s;
  return r;
}

void require_angle(double value, double hi, const char* what) {
  if (!(value >= -1e-9 && value <= hi + 1e-9))
    throw DomainError(std::string(what) + " outside the wedge: " + std::to_string(value));
}

}  // namespace

FresnelIntegrals fresnel_integrals(double x) {
  const FresnelEval e = fresnel_eval(x);
  return {e.c, e.s};
}

cdouble utd_transition(double x) {
  if (!(x >= 0.0)) throw DomainError("transition function argument must be non-negative");
  if (x == 0.0) return 0.0;
  const double u = std::sqrt(x);
  const FresnelEval e = fresnel_eval(u * std::sqrt(2.0 / kPi));
  // int_u^inf e^{-j t^2} dt = sqrt(pi/2) [(1/2 - C) - j (1/2 - S)]
  const cdouble tail = std::sqrt(0.5 * kPi) * cdouble(e.cc, -e.sc);
  return cdouble(0.0, 2.0 * u) * std::polar(1.0, x) * tail;
}

WedgeReflections wedge_reflections(const WedgeSpec& wedge, double phi, double phi_inc) {
  if (wedge.perfect_conductor) return WedgeReflections::conducting();
  auto incidence = [](double grazing) {
    return std::clamp(std::abs(0.5 * kPi - grazing), 0.0, 0.5 * kPi);
  };
  const FresnelPair f0 = fresnel(wedge.eps0, incidence(phi_inc));
  const FresnelPair fn = fresnel(wedge.epsn, incidence(wedge.wedge_n * kPi - phi));
  return {f0.perp, fn.perp, f0.par, fn.par};
}

UtdCoefficients utd_coefficients(double wedge_n, double phi, double phi_inc, double beta0,
                                 double distance_l, double k, const WedgeReflections& refl) {
  const double n = wedge_n;
  if (!(n >= 1.0 && n <= 2.0)) throw DomainError("wedge factor n must lie in [1, 2]");
  require_angle(phi, n * kPi, "observation angle");
  require_angle(phi_inc, n * kPi, "incidence angle");
  const double sb = std::sin(beta0);
  if (!(sb > 1e-12)) throw DomainError("ray parallel to the diffracting edge");
  if (!(distance_l > 0.0) || !(k > 0.0)) throw DomainError("distance parameter and wavenumber must be positive");

  const double kl = k * distance_l;
  // cot((pi + sign*beta) / 2n) F(kL a^sign(beta)), with the boundary limit.
  auto term = [&](double beta, int sign) -> cdouble {
    const double nn = std::round((beta + sign * kPi) / (kTwoPi * n));
    const double eps = kPi + sign * beta - sign * kTwoPi * n * nn;
    if (std::abs(eps) < 1e-8) {
      const double sg = eps >= 0.0 ? 1.0 : -1.0;
      return n * std::polar(1.0, 0.25 * kPi) * (std::sqrt(kTwoPi * kl) * sg - 2.0 * kl * eps * std::polar(1.0, 0.25 * kPi));
    }
    const double c = std::cos(0.5 * (kTwoPi * n * nn - beta));
    const double a = 2.0 * c * c;
    return (1.0 / std::tan((kPi + sign * beta) / (2.0 * n))) * utd_transition(kl * a);
  };

  const double bm = phi - phi_inc;
  const double bp = phi + phi_inc;
  const cdouble pre = -std::polar(1.0, -0.25 * kPi) / (2.0 * n * std::sqrt(kTwoPi * k) * sb);
  const cdouble t1 = term(bm, +1);
  const cdouble t2 = term(bm, -1);
  const cdouble t3 = term(bp, -1);
  const cdouble t4 = term(bp, +1);
  return {pre * (t1 + t2 + refl.r0_soft * t3 + refl.rn_soft * t4),
          pre * (t1 + t2 + refl.r0_hard * t3 + refl.rn_hard * t4)};
}

double edge_spreading(double s_inc, double s_diff) {
  if (!(s_inc > 0.0) || !(s_diff > 0.0)) throw DomainError("diffraction distances must be positive");
  return std::sqrt(s_inc / (s_diff * (s_diff + s_inc)));
}

DiffractionFactor utd_diffraction(const WedgeSpec& wedge, double phi_inc, double phi, double beta0,
                                  double s_inc, double s_diff, double freq_ghz) {
  const double spread = edge_spreading(s_inc, s_diff);
  const double sb = std::sin(beta0);
  const double l = s_diff * s_inc * sb * sb / (s_diff + s_inc);
  const WedgeReflections refl = wedge_reflections(wedge, phi, phi_inc);
  const UtdCoefficients d = utd_coefficients(wedge.wedge_n, phi, phi_inc, beta0, l, wavenumber(freq_ghz), refl);
  return {d.soft * spread, d.hard * spread};
}

JonesField apply_diffraction(const JonesField& field, const Vec3& edge_dir, const Vec3& diffracted_dir,
                             const DiffractionFactor& factor) {
  const Vec3& s_in = field.direction;
  const Vec3 e = edge_dir.normalized();
  const Vec3 s_out = diffracted_dir.normalized();
  const Vec3 x_in = e.cross(s_in);
  const Vec3 x_out = e.cross(s_out);
  if (x_in.norm() < 1e-12 || x_out.norm() < 1e-12)
    throw GeometryError("diffraction with a ray parallel to the edge");
  const Vec3 phi_in = -x_in.normalized();
  const Vec3 beta_in = phi_in.cross(s_in);
  const Vec3 phi_out = x_out.normalized();
  const Vec3 beta_out = phi_out.cross(s_out);
  auto [e_beta, e_phi] = field.project(beta_in, phi_in);
  return {s_out, beta_out, phi_out, -factor.soft * e_beta, -factor.hard * e_phi};
}

}  // namespace rtris
