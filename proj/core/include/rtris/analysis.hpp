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

// Post-processing statistics and closed-form reference models.

#include <span>
#include <string>
#include <vector>

#include "rtris/geometry.hpp"
#include "rtris/material.hpp"

namespace rtris {

/// Right-continuous empirical CDF.
class Ecdf {
 public:
  explicit Ecdf(std::vector<double> samples);

  /// Fraction of samples <= x.
  double operator()(double x) const;
  const std::vector<double>& sorted() const { return sorted_; }
  std::size_t size() const { return sorted_.size(); }

 private:
  std::vector<double> sorted_;
};

/// Throws DomainError on empty or non-finite input.
Ecdf ecdf(std::vector<double> samples);

enum class FitType { gaussian_cdf, polynomial, loglog_line, inverse_distance_product };

struct FitResult {
  FitType type = FitType::polynomial;
  // gaussian_cdf: {mean, sigma}; polynomial: ascending powers of x;
  // loglog_line: {intercept, slope} of log10 y against log10 x;
  // inverse_distance_product: {K} in y = K / (d_t^2 d_r^2).
  std::vector<double> coefficients;
  double rss = 0.0;
  // polynomial only: the fit is held internally in t = (x - x_center) / x_scale.
  double x_center = 0.0;
  double x_scale = 1.0;
  std::vector<double> scaled_coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  /// Evaluates a polynomial fit.
  double evaluate(double x) const;
};

/// Least-squares fit of a normal CDF (mean, sigma) to the ECDF at its sample
/// points, by Levenberg-Marquardt. Needs n >= 3 and non-zero spread.
FitResult fit_gaussian_cdf(const Ecdf& e);

/// Ordinary least squares polynomial of `degree` with a centred and scaled
/// abscissa. Throws DomainError if the system is rank deficient.
FitResult fit_polynomial(std::span<const double> x, std::span<const double> y, int degree);

/// Straight line through (log10 x, log10 y); x and y must be positive.
FitResult fit_loglog(std::span<const double> x, std::span<const double> y);

/// Best K for y = K / (d_t^2 d_r^2) in the least-squares sense.
FitResult fit_inverse_distance_product(std::span<const double> d_t, std::span<const double> d_r,
                                       std::span<const double> y);

/// Free-space gain 20 log10(lambda / (4 pi d)) in dB.
double friis_gain_db(double distance_m, double freq_ghz);

/// Reflection coefficient seen by the (vertical + horizontal) / sqrt2
/// polarisation after one ground bounce, reduced the same way as the
/// receiver: magnitude sqrt((|Gpar|^2 + |Gperp|^2) / 2), phase arg(Gpar + Gperp).
cdouble ground_reflection_effective(const Material& ground, double incidence, double freq_ghz);

/// Two-ray power gain in dB: |g(d1) + Gamma g(d2)|^2 with d1 the direct and
/// d2 the ground-reflected distance for horizontal separation `distance_m`.
double two_ray_power(double distance_m, double h_t, double h_r, double freq_ghz, const Material& ground);
/// Same, with a fixed reflection coefficient.
double two_ray_power(double distance_m, double h_t, double h_r, double freq_ghz, cdouble gamma);

/// Free-space RIS cascade amplitude N (lambda / (4 pi d_t)) (lambda / (4 pi d_r)).
double ris_cascade_closed_form(int n_elements, double d_t, double d_r, double freq_ghz);

/// Indices of strict local minima / maxima (interior points only).
std::vector<std::size_t> local_minima(std::span<const double> y);
std::vector<std::size_t> local_maxima(std::span<const double> y);

/// Dominant gradient orientation in [0, pi) of a field sampled on a regular
/// grid (row-major, nx fastest, x east, y north), from the averaged structure
/// tensor. Fringes run perpendicular to the returned direction.
double fringe_normal_orientation(std::span<const double> values, int nx, int ny, double dx, double dy);

/// Smallest angle between two axial orientations (radians, modulo pi).
double axial_difference(double a, double b);

}  // namespace rtris
