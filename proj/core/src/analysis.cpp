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


#include "rtris/analysis.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/Dense>

#include "rtris/em.hpp"
#include "rtris/error.hpp"

namespace rtris {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(kTwoPi); }

}  // namespace

Ecdf::Ecdf(std::vector<double> samples) : sorted_(std::move(samples)) {
  if (sorted_.empty()) throw DomainError("ECDF needs at least one sample");
  for (double v : sorted_)
    if (!std::isfinite(v)) throw DomainError("ECDF samples must be finite");
  std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

Ecdf ecdf(std::vector<double> samples) { return Ecdf(std::move(samples)); }

double FitResult::evaluate(double x) const {
  if (type != FitType::polynomial) throw DomainError("evaluate() applies to polynomial fits");
  const double t = (x - x_center) / x_scale;
  double y = 0.0;
  for (auto it = scaled_coefficients.rbegin(); it != scaled_coefficients.rend(); ++it) y = y * t + *it;
  return y;
}

FitResult fit_gaussian_cdf(const Ecdf& e) {
  const auto& xs = e.sorted();
  const std::size_t n = xs.size();
  if (n < 3) throw DomainError("Gaussian CDF fit needs at least 3 samples");
  if (xs.front() == xs.back()) throw DomainError("Gaussian CDF fit of zero-variance samples");

  // Targets: the ECDF value at each sample (ties share the upper value).
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = e(xs[i]);

  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= static_cast<double>(n - 1);

  // Parameters (mu, log sigma) keep sigma positive.
  Eigen::Vector2d p(mean, 0.5 * std::log(var));
  auto residuals = [&](const Eigen::Vector2d& q, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
    const double sigma = std::exp(q(1));
    r.resize(static_cast<Eigen::Index>(n));
    if (jac) jac->resize(static_cast<Eigen::Index>(n), 2);
    for (std::size_t i = 0; i < n; ++i) {
      const double z = (xs[i] - q(0)) / sigma;
      r(static_cast<Eigen::Index>(i)) = normal_cdf(z) - f[i];
      if (jac) {
        const double g = normal_pdf(z);
        (*jac)(static_cast<Eigen::Index>(i), 0) = -g / sigma;
        (*jac)(static_cast<Eigen::Index>(i), 1) = -g * z;
      }
    }
    return r.squaredNorm();
  };

  Eigen::VectorXd r;
  Eigen::MatrixXd jac;
  double cost = residuals(p, r, &jac);
  double lambda = 1e-3;
  for (int iter = 0; iter < 200; ++iter) {
    const Eigen::Matrix2d jtj = jac.transpose() * jac;
    const Eigen::Vector2d g = jac.transpose() * r;
    Eigen::Matrix2d a = jtj;
    a.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
    const Eigen::Vector2d step = a.ldlt().solve(-g);
    const Eigen::Vector2d trial = p + step;
    Eigen::VectorXd r_trial;
    const double c_trial = residuals(trial, r_trial, nullptr);
    if (c_trial < cost) {
      const double gain = cost - c_trial;
      p = trial;
      cost = residuals(p, r, &jac);
      lambda = std::max(lambda * 0.3, 1e-12);
      if (gain < 1e-15 * std::max(cost, 1e-30) || step.norm() < 1e-12) break;
    } else {
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
  }
  FitResult out;
  out.type = FitType::gaussian_cdf;
  out.coefficients = {p(0), std::exp(p(1))};
  out.rss = cost;
  return out;
}

FitResult fit_polynomial(std::span<const double> x, std::span<const double> y, int degree) {
  if (x.size() != y.size()) throw DomainError("x and y lengths differ");
  if (degree < 0) throw DomainError("polynomial degree must be non-negative");
  const std::size_t m = x.size();
  if (m <= static_cast<std::size_t>(degree)) throw DomainError("polynomial fit needs more points than its degree");

  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  const double center = 0.5 * (*lo + *hi);
  const double scale = *hi > *lo ? 0.5 * (*hi - *lo) : 1.0;
  const int cols = degree + 1;
  Eigen::MatrixXd v(static_cast<Eigen::Index>(m), cols);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    const double t = (x[i] - center) / scale;
    double pw = 1.0;
    for (int j = 0; j < cols; ++j) {
      v(static_cast<Eigen::Index>(i), j) = pw;
      pw *= t;
    }
    rhs(static_cast<Eigen::Index>(i)) = y[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(v);
  qr.setThreshold(1e-12);
  if (qr.rank() < cols) throw DomainError("polynomial fit is rank deficient");
  const Eigen::VectorXd c = qr.solve(rhs);

  FitResult out;
  out.type = FitType::polynomial;
  out.x_center = center;
  out.x_scale = scale;
  out.scaled_coefficients.assign(c.data(), c.data() + cols);
  out.rss = (v * c - rhs).squaredNorm();

  // Expand sum c_j ((x - center) / scale)^j into ascending powers of x.
  std::vector<double> coeffs(static_cast<std::size_t>(cols), 0.0);
  for (int j = 0; j < cols; ++j) {
    const double cj = c(j) / std::pow(scale, j);
    double binom = 1.0;
    for (int k = 0; k <= j; ++k) {
      // C(j, k) x^k (-center)^(j-k)
      coeffs[static_cast<std::size_t>(k)] += cj * binom * std::pow(-center, j - k);
      binom = binom * (j - k) / (k + 1);
    }
  }
  out.coefficients = std::move(coeffs);
  return out;
}

FitResult fit_loglog(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("log-log fit needs matching inputs of size >= 2");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("log-log fit needs positive data");
    lx.push_back(std::log10(x[i]));
    ly.push_back(std::log10(y[i]));
  }
  FitResult line = fit_polynomial(lx, ly, 1);
  line.type = FitType::loglog_line;
  return line;
}

FitResult fit_inverse_distance_product(std::span<const double> d_t, std::span<const double> d_r,
                                       std::span<const double> y) {
  if (d_t.size() != y.size() || d_r.size() != y.size() || y.empty())
    throw DomainError("inverse distance fit needs matching, non-empty inputs");
  double sgg = 0.0, syg = 0.0;
  std::vector<double> g(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(d_t[i] > 0.0) || !(d_r[i] > 0.0)) throw DomainError("distances must be positive");
    g[i] = 1.0 / (d_t[i] * d_t[i] * d_r[i] * d_r[i]);
    sgg += g[i] * g[i];
    syg += y[i] * g[i];
  }
  FitResult out;
  out.type = FitType::inverse_distance_product;
  const double k = syg / sgg;
  out.coefficients = {k};
  for (std::size_t i = 0; i < y.size(); ++i) out.rss += (y[i] - k * g[i]) * (y[i] - k * g[i]);
  return out;
}

double friis_gain_db(double distance_m, double freq_ghz) {
  if (!(distance_m > 0.0)) throw DomainError("distance must be positive");
  return 20.0 * std::log10(wavelength(freq_ghz) / (4.0 * kPi * distance_m));
}

cdouble ground_reflection_effective(const Material& ground, double incidence, double freq_ghz) {
  const FresnelPair g = fresnel(itu_permittivity(ground, freq_ghz), incidence);
  const double mag = std::sqrt(0.5 * (std::norm(g.par) + std::norm(g.perp)));
  return std::polar(mag, std::arg(g.par + g.perp));
}

double two_ray_power(double distance_m, double h_t, double h_r, double freq_ghz, cdouble gamma) {
  if (!(distance_m > 0.0)) throw DomainError("distance must be positive");
  const double d1 = std::hypot(distance_m, h_t - h_r);
  const double d2 = std::hypot(distance_m, h_t + h_r);
  const cdouble h = free_space_gain(d1, freq_ghz) + gamma * free_space_gain(d2, freq_ghz);
  return 20.0 * std::log10(std::abs(h));
}

double two_ray_power(double distance_m, double h_t, double h_r, double freq_ghz, const Material& ground) {
  const double incidence = std::atan2(distance_m, h_t + h_r);
  return two_ray_power(distance_m, h_t, h_r, freq_ghz, ground_reflection_effective(ground, incidence, freq_ghz));
}

double ris_cascade_closed_form(int n_elements, double d_t, double d_r, double freq_ghz) {
  if (n_elements < 1 || !(d_t > 0.0) || !(d_r > 0.0)) throw DomainError("invalid closed-form cascade inputs");
  const double lambda = wavelength(freq_ghz);
  return n_elements * (lambda / (4.0 * kPi * d_t)) * (lambda / (4.0 * kPi * d_r));
}

std::vector<std::size_t> local_minima(std::span<const double> y) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < y.size(); ++i)
    if (y[i] < y[i - 1] && y[i] < y[i + 1]) out.push_back(i);
  return out;
}

std::vector<std::size_t> local_maxima(std::span<const double> y) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < y.size(); ++i)
    if (y[i] > y[i - 1] && y[i] > y[i + 1]) out.push_back(i);
  return out;
}

double fringe_normal_orientation(std::span<const double> values, int nx, int ny, double dx, double dy) {
  if (nx < 3 || ny < 3 || values.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny))
    throw DomainError("fringe analysis needs a grid of at least 3x3 samples");
  auto at = [&](int i, int j) { return values[static_cast<std::size_t>(j) * nx + i]; };
  double jxx = 0.0, jxy = 0.0, jyy = 0.0;
  for (int j = 1; j + 1 < ny; ++j)
    for (int i = 1; i + 1 < nx; ++i) {
      const double gx = (at(i + 1, j) - at(i - 1, j)) / (2.0 * dx);
      const double gy = (at(i, j + 1) - at(i, j - 1)) / (2.0 * dy);
      jxx += gx * gx;
      jxy += gx * gy;
      jyy += gy * gy;
    }
  double theta = 0.5 * std::atan2(2.0 * jxy, jxx - jyy);
  if (theta < 0.0) theta += kPi;
  return theta;
}

double axial_difference(double a, double b) {
  double d = std::fmod(std::abs(a - b), kPi);
  return std::min(d, kPi - d);
}

}  // namespace rtris
