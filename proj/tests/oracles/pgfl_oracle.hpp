// SPDX-License-Identifier: Apache-2.0
//
// mmshare: spectrum sharing analysis for mmWave cellular networks
// Copyright (C) 2026 The mmshare Authors
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

#pragma once

// Reference values for the interference functionals, computed straight from
// the Poisson probability generating functional in physical distance. Shares
// no code with the library: its own blockage areas, home-link density and
// Boost quadrature instead of the in-house Gauss-Kronrod. Tolerances sit a
// few digits below the 1e-6 comparisons.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

struct Channel {
  double beta = 150.0;
  std::array<double, 2> alpha = {2.5, 3.5};  // LOS, NLOS
  std::array<double, 2> gain = {1e-6, 1e-6};
};

inline constexpr double pi = std::numbers::pi;

inline double p_type(const Channel& ch, int t, double d) {
  const double los = std::exp(-d / ch.beta);
  return t == 0 ? los : -std::expm1(-d / ch.beta);
}

template <class F>
double finite(F f, double a, double b) {
  if (!(b > a)) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-10);
}

template <class F>
double tail(F f, double a) {
  boost::math::quadrature::exp_sinh<double> q;
  return q.integrate(f, a, std::numeric_limits<double>::infinity(), 1e-10);
}

// 2 pi int_0^r p_t(u) u du; antiderivative of u exp(-u/beta).
inline double area(const Channel& ch, int t, double r) {
  const double x = r / ch.beta;
  const double los = 2.0 * pi * ch.beta * ch.beta * (-std::expm1(-x) - x * std::exp(-x));
  return t == 0 ? los : pi * r * r - los;
}

/// Distance at which a type-t link is as strong as a type-home link at r.
inline double equal_power_distance(const Channel& ch, int home, int t, double r) {
  return std::pow(ch.gain[t] / ch.gain[home] * std::pow(r, ch.alpha[home]), 1.0 / ch.alpha[t]);
}

/// Density of (distance, type) from a secondary BS to the primary user
/// giving it the strongest average gain, users a PPP of density lambda.
inline double home_pdf(const Channel& ch, double lambda, int home, double r) {
  if (r <= 0.0) return 0.0;
  const int other = 1 - home;
  const double v = area(ch, home, r) + area(ch, other, equal_power_distance(ch, home, other, r));
  return 2.0 * pi * lambda * p_type(ch, home, r) * r * std::exp(-lambda * v);
}

/// sum_T int f(r, T) g(r, T) dr. The density carries exp(-lambda V) with V
/// growing at least like r^{2 alpha_min / alpha_max}, so it is cut where
/// lambda V passes 80.
template <class G>
double over_home_link(const Channel& ch, double lambda, G g) {
  const double spacing = 1.0 / std::sqrt(pi * lambda);
  double total = 0.0;
  for (int home = 0; home < 2; ++home) {
    const int other = 1 - home;
    double cut = 10.0 * spacing;
    while (lambda * (area(ch, home, cut) + area(ch, other, equal_power_distance(ch, home, other, cut))) < 80.0) {
      cut *= 1.5;
    }
    auto f = [&](double r) {
      const double p = home_pdf(ch, lambda, home, r);
      return p == 0.0 ? 0.0 : p * g(r, home);
    };
    total += finite(f, 0.0, spacing) + finite(f, spacing, 10.0 * spacing) + finite(f, 10.0 * spacing, cut);
  }
  return total;
}

/// Mean over interferers at type-t distance d >= d0 of 1 - E_h[exp(-s h P C d^-alpha)]
/// times 2 pi d p_t(d), integrated: one BS of power `power`.
inline double shot(const Channel& ch, int t, double power, double s, double d0) {
  const double a = ch.alpha[t];
  const double k = s * power * ch.gain[t];
  if (!(k > 0.0)) return 0.0;
  auto f = [&](double d) { return 2.0 * pi * d * p_type(ch, t, d) / (1.0 + std::pow(d, a) / k); };
  const double knee = std::max(d0, std::pow(k, 1.0 / a));
  return finite(f, d0, knee) + tail(f, knee);
}

/// Fixed-power tier: sum_t int over the region where the mean received power
/// P C_t d^-alpha_t is at most 1/e.
inline double fixed_power_functional(const Channel& ch, double power, double b, double e) {
  double total = 0.0;
  for (int t = 0; t < 2; ++t) {
    const double d0 = e > 0.0 ? std::pow(e * power * ch.gain[t], 1.0 / ch.alpha[t]) : 0.0;
    total += shot(ch, t, power, b, d0);
  }
  return total;
}

/// Power-controlled tier with unit cap: each BS transmits r^alpha_T / C_T.
inline double restricted_functional(const Channel& ch, double lambda_users, double b, double e) {
  return over_home_link(ch, lambda_users, [&](double r, int home) {
    const double xbar = std::pow(r, ch.alpha[home]) / ch.gain[home];
    return fixed_power_functional(ch, xbar, b, e);
  });
}

/// Mean number of BSs, per unit BS density, whose mean received power at
/// the origin reaches the cap.
inline double restricted_inner_mass(const Channel& ch, double lambda_users) {
  return over_home_link(ch, lambda_users, [&](double r, int home) {
    double m = 0.0;
    for (int t = 0; t < 2; ++t) m += area(ch, t, equal_power_distance(ch, home, t, r));
    return m;
  });
}

}  // namespace oracle
