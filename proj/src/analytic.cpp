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

#include "mmshare/analytic.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mmshare/units.hpp"

namespace mmshare {

namespace {

// exp(-x) underflows past this; the integrand is then exactly zero.
constexpr double kDeadExponent = 745.0;

// x^a; path-loss exponents are usually whole or half integers.
double power_of(double x, double a) {
  const double twice = 2.0 * a;
  if (twice >= 2.0 && twice <= 16.0 && twice == std::floor(twice)) {
    const int n = static_cast<int>(a);
    double r = x;
    for (int i = 1; i < n; ++i) r *= x;
    return twice == 2.0 * n ? r : r * std::sqrt(x);
  }
  return std::pow(x, a);
}

double rho_infinite(double alpha) {
  const double x = kTwoPi / alpha;
  return x / std::sin(x);
}

}  // namespace

double rho_quadrature(double alpha, double tau, double rel_tol) {
  if (!(alpha > 2.0)) throw std::domain_error("rho diverges for alpha <= 2");
  if (!(tau > 0.0)) return 0.0;
  const double lower = std::isinf(tau) ? 0.0 : std::pow(tau, -1.0 / alpha);
  quad::SemiInfinite shape;
  shape.scale = 1.0;
  shape.decay = alpha - 1.0;
  const auto r = quad::semi_infinite([alpha](double v) { return 2.0 * v / (1.0 + std::pow(v, alpha)); },
                                     lower, shape, {rel_tol, 0.0, 4000});
  return quad::checked(r, "rho");
}

double rho(double alpha, double tau) {
  if (!(alpha > 2.0)) throw std::domain_error("rho diverges for alpha <= 2");
  if (!(tau > 0.0)) return 0.0;
  if (std::isinf(tau)) return rho_infinite(alpha);
  if (alpha == 4.0) return std::atan(std::sqrt(tau));
  return rho_quadrature(alpha, tau);
}

std::shared_ptr<const RestrictedKernel> make_restricted_kernel(const Scenario& s, int threads) {
  return std::make_shared<const RestrictedKernel>(
      HomeLinkDistribution(s.channel, s.primary.user_density), RestrictedKernel::TableSpec{}, threads);
}

AnalyticModel::AnalyticModel(const Scenario& s, QuadratureSpec q,
                             std::shared_ptr<const RestrictedKernel> restricted)
    : scenario_(s), quad_(q), restricted_(std::move(restricted)) {
  scenario_.channel.validate();
  scenario_.primary.validate("primary");
  scenario_.secondary.validate("secondary");
  if (!(quad_.rel > 0.0) || !(quad_.outer_rel > 0.0)) {
    throw std::invalid_argument("quadrature: tolerances must be positive");
  }

  primary_kernel_ = std::make_unique<FixedPowerKernel>(scenario_.channel, scenario_.primary_power());
  primary_ = Tier{primary_kernel_.get(), scenario_.primary.bs_density, scenario_.primary.antenna, 1.0,
                  scenario_.primary.noise_power, false};

  if (scenario_.restricted()) {
    if (!restricted_) restricted_ = make_restricted_kernel(scenario_);
    if (restricted_->home().density() != scenario_.primary.user_density) {
      throw std::invalid_argument("analytic: shared kernel was built for another primary user density");
    }
    secondary_ = Tier{restricted_.get(), scenario_.secondary.bs_density, scenario_.secondary.antenna,
                      scenario_.xi(), scenario_.secondary.noise_power, true};
  } else {
    const double p = std::get<FixedPower>(scenario_.secondary.power).watts;
    uncoordinated_kernel_ = std::make_unique<FixedPowerKernel>(scenario_.channel, p);
    secondary_ = Tier{uncoordinated_kernel_.get(), scenario_.secondary.bs_density,
                      scenario_.secondary.antenna, 1.0, scenario_.secondary.noise_power, false};
  }
}

double AnalyticModel::kernel_K(LinkType t, double u) const {
  if (!restricted_) throw std::logic_error("kernel_K needs a restricted secondary operator");
  return restricted_->value(t, u);
}

double AnalyticModel::kernel_M(LinkType t, double u) const { return primary_kernel_->value(t, u); }

double AnalyticModel::phi(const Kernel& kernel, double b, double e) const {
  if (!(b > 0.0)) return 0.0;
  const ChannelModel& ch = scenario_.channel;
  double total = 0.0;
  for (LinkType t : kLinkTypes) {
    const double alpha = ch.alpha_of(t);
    const double stretch = std::pow(b, 1.0 / alpha);
    const double w0 = e > 0.0 ? std::pow(e / b, 1.0 / alpha) : 0.0;
    quad::SemiInfinite shape;
    shape.scale = 1.0;
    shape.decay = alpha - 1.0;
    shape.lower_decades = 10.0;
    shape.upper_decades = 4.0;
    shape.panels = 4;
    shape.head = false;
    const auto r = quad::semi_infinite(
        [&](double w) {
          const double k = kernel.value(t, w * stretch);
          if (k == 0.0) return 0.0;
          return k * kTwoPi * w / (1.0 + power_of(w, alpha));
        },
        w0, shape, {quad_.rel, 0.0, quad_.max_subdivisions});
    total += std::pow(b, 2.0 / alpha) * quad::checked(r, "interference functional");
  }
  return total;
}

double AnalyticModel::F_S(double b, double e) const { return phi(*secondary_.kernel, b, e); }
double AnalyticModel::F_P(double b) const { return phi(*primary_.kernel, b, 0.0); }
double AnalyticModel::E_P(double b, double e) const { return phi(*primary_.kernel, b, e); }

double AnalyticModel::E_FS(double b, double xi) const {
  if (!restricted_) throw std::logic_error("E_FS needs a restricted secondary operator");
  return phi(*restricted_, b * xi, 1.0);
}

double AnalyticModel::E_NS(double b) const {
  if (!restricted_) throw std::logic_error("E_NS needs a restricted secondary operator");
  const double bx = b * scenario_.xi();
  if (!(bx > 0.0)) return 0.0;
  const double native = restricted_->void_mass(LinkType::LOS, 1.0) +
                        restricted_->void_mass(LinkType::NLOS, 1.0);
  return native / (1.0 + 1.0 / bx);
}

double AnalyticModel::own_exponent(const Tier& tier, double s, double e) const {
  const auto g = tier.antenna.gains();
  const auto w = tier.antenna.weights();
  double sum = 0.0;
  for (std::size_t k = 0; k < 2; ++k) {
    if (w[k] == 0.0 || g[k] == 0.0) continue;
    sum += w[k] * phi(*tier.kernel, s * tier.scale * g[k], e);
  }
  return tier.density * sum;
}

double AnalyticModel::cross_exponent(const Tier& cross, double s) const {
  if (!cross.restricted) return own_exponent(cross, s, 0.0);
  // Secondary BSs homed on the typical primary user put exactly xi on it
  // on average; the rest sit beyond unit scaled distance.
  const double native = cross.kernel->void_mass(LinkType::LOS, 1.0) +
                        cross.kernel->void_mass(LinkType::NLOS, 1.0);
  const auto g = cross.antenna.gains();
  const auto w = cross.antenna.weights();
  double sum = 0.0;
  for (std::size_t k = 0; k < 2; ++k) {
    const double b = s * cross.scale * g[k];
    if (w[k] == 0.0 || !(b > 0.0)) continue;
    sum += w[k] * (phi(*cross.kernel, b, 1.0) + native / (1.0 + 1.0 / b));
  }
  return cross.density * sum;
}

double AnalyticModel::laplace_secondary_at_secondary(double s, double e) const {
  return std::exp(-own_exponent(secondary_, s, e));
}

double AnalyticModel::laplace_primary_at_secondary(double s) const {
  return std::exp(-own_exponent(primary_, s, 0.0));
}

double AnalyticModel::laplace_primary_at_primary(double s, double e) const {
  return std::exp(-own_exponent(primary_, s, e));
}

double AnalyticModel::laplace_secondary_at_primary(double s) const {
  return std::exp(-cross_exponent(secondary_, s));
}

double AnalyticModel::void_exponent(const Tier& tier, LinkType t0, double u) const {
  const ChannelModel& ch = scenario_.channel;
  double sum = 0.0;
  for (LinkType t : kLinkTypes) {
    sum += tier.kernel->void_mass(t, t == t0 ? u : std::pow(u, ch.alpha_of(t0) / ch.alpha_of(t)));
  }
  return tier.density * sum;
}

double AnalyticModel::distance_scale(const Tier& tier, LinkType t0) const {
  double lo = std::log(1e-15);
  double hi = std::log(1e15);
  if (void_exponent(tier, t0, std::exp(hi)) < 1.0) return std::exp(hi);
  if (void_exponent(tier, t0, std::exp(lo)) > 1.0) return std::exp(lo);
  for (int i = 0; i < 80 && hi - lo > 1e-6; ++i) {
    const double mid = 0.5 * (lo + hi);
    (void_exponent(tier, t0, std::exp(mid)) < 1.0 ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

double AnalyticModel::coverage_of(const Tier& serving, const Tier& cross, double tau) const {
  if (!(tau >= 0.0)) throw std::domain_error("coverage threshold must be >= 0");
  const ChannelModel& ch = scenario_.channel;
  const double g1 = serving.antenna.main_gain;

  // Serving link types that share the exponent share s and the interference
  // terms, so they go through one outer integral.
  std::vector<std::vector<LinkType>> groups;
  if (ch.alpha[0] == ch.alpha[1]) {
    groups.push_back({LinkType::LOS, LinkType::NLOS});
  } else {
    groups.push_back({LinkType::LOS});
    groups.push_back({LinkType::NLOS});
  }

  double total = 0.0;
  for (const auto& group : groups) {
    const double alpha0 = ch.alpha_of(group.front());
    quad::SemiInfinite shape;
    shape.scale = distance_scale(serving, group.front());
    for (LinkType t0 : group) shape.scale = std::min(shape.scale, distance_scale(serving, t0));
    shape.decay = 3.0;
    shape.lower_decades = 8.0;
    shape.upper_decades = 3.0;
    shape.panels = 4;
    shape.head = false;
    const auto r = quad::semi_infinite(
        [&](double u) {
          if (!(u > 0.0)) return 0.0;
          const double e = power_of(u, alpha0);
          const double s = tau * e / (serving.scale * g1);
          double interference = -1.0;
          double sum = 0.0;
          for (LinkType t0 : group) {
            const double kappa = serving.kernel->value(t0, u);
            if (kappa == 0.0) continue;
            double ex = void_exponent(serving, t0, u) + s * serving.noise;
            if (ex > kDeadExponent) continue;
            if (interference < 0.0) {
              interference = own_exponent(serving, s, e);
              if (ex + interference <= kDeadExponent) interference += cross_exponent(cross, s);
            }
            ex += interference;
            if (ex > kDeadExponent) continue;
            sum += kappa * std::exp(-ex);
          }
          return kTwoPi * serving.density * u * sum;
        },
        0.0, shape, {quad_.outer_rel, quad_.outer_abs, quad_.max_subdivisions});
    total += quad::checked(r, "coverage");
  }
  return std::clamp(total, 0.0, 1.0);
}

double AnalyticModel::coverage_secondary(double tau) const { return coverage_of(secondary_, primary_, tau); }
double AnalyticModel::coverage_primary(double tau) const { return coverage_of(primary_, secondary_, tau); }

double AnalyticModel::coverage(mc::Operator which, double tau) const {
  return which == mc::Operator::Primary ? coverage_primary(tau) : coverage_secondary(tau);
}

CoverageCurve AnalyticModel::curve_serial(mc::Operator which, const std::vector<double>& thresholds) const {
  CoverageCurve c;
  c.thresholds = thresholds;
  c.provenance = AnalyticProvenance{quad_.outer_rel};
  c.ci_halfwidth.assign(thresholds.size(), 0.0);
  for (double tau : thresholds) c.values.push_back(coverage(which, tau));
  return c;
}

CoverageCurve AnalyticModel::curve(mc::Operator which, const std::vector<double>& thresholds,
                                   int threads) const {
  CoverageCurve c;
  c.thresholds = thresholds;
  c.provenance = AnalyticProvenance{quad_.outer_rel};
  c.ci_halfwidth.assign(thresholds.size(), 0.0);
  c.values.assign(thresholds.size(), 0.0);
  std::exception_ptr failure;
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(thresholds.size()); ++i) {
    try {
      c.values[static_cast<std::size_t>(i)] = coverage(which, thresholds[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(mmshare_curve_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return c;
}

SpecialCaseParams SpecialCaseParams::from(const Scenario& s, bool interference_limited,
                                          bool zero_side_lobe) {
  if (!s.channel.equal_parameters()) {
    throw std::invalid_argument("special case: needs alpha_L = alpha_N and C_L = C_N");
  }
  if (!s.restricted()) throw std::invalid_argument("special case: needs a restricted secondary");
  if (zero_side_lobe) {
    const auto& p = s.primary.antenna;
    const auto& q = s.secondary.antenna;
    if (p.side_gain != 0.0 || q.side_gain != 0.0 || p.beamwidth != q.beamwidth) {
      throw std::invalid_argument("special case: zero side lobes need G2 = 0 and one beamwidth for both operators");
    }
  }
  SpecialCaseParams out;
  out.alpha = s.channel.alpha[0];
  out.gain = s.channel.gain[0];
  out.interference_limited = interference_limited;
  out.zero_side_lobe = zero_side_lobe;
  return out;
}

double coverage_secondary_closed(double tau, const Scenario& s, const SpecialCaseParams& p) {
  if (!(tau >= 0.0)) throw std::domain_error("coverage threshold must be >= 0");
  const double a = p.alpha;
  const double xi = s.xi();
  const double lam_p = s.primary.bs_density;
  const double lam_s = s.secondary.bs_density;
  const double lam_pr = s.primary.user_density;
  const double m = std::pow(s.primary_power() * p.gain, 2.0 / a);
  const double t2a = std::pow(tau, 2.0 / a);
  const double g_s1 = s.secondary.antenna.main_gain;

  if (p.zero_side_lobe && p.interference_limited) {
    const double w = s.secondary.antenna.main_weight();
    const double primary_term = lam_p / lam_s * std::pow(xi, -2.0 / a) * m * lam_pr * kPi * rho(a, INFINITY);
    return 1.0 / (1.0 + w * t2a * (primary_term + rho(a, tau)));
  }

  double f_s = 0.0;
  double f_p = 0.0;
  const auto gs = s.secondary.antenna.gains();
  const auto ws = s.secondary.antenna.weights();
  const auto gp = s.primary.antenna.gains();
  const auto wp = s.primary.antenna.weights();
  for (std::size_t k = 0; k < 2; ++k) {
    if (ws[k] > 0.0 && gs[k] > 0.0) {
      f_s += ws[k] * std::pow(gs[k] / g_s1, 2.0 / a) * rho(a, tau * gs[k] / g_s1);
    }
    if (wp[k] > 0.0 && gp[k] > 0.0) f_p += wp[k] * std::pow(gp[k] / g_s1, 2.0 / a) * rho(a, INFINITY);
  }
  if (p.interference_limited) {
    return 1.0 / (1.0 + t2a * (lam_p * m * kPi * lam_pr * f_p / (std::pow(xi, 2.0 / a) * lam_s) + f_s));
  }

  const double k_const = 1.0 / (kPi * lam_pr);
  const double big_a = kPi * (lam_s * k_const * (1.0 + t2a * f_s) + lam_p * m * t2a * std::pow(xi, -2.0 / a) * f_p);
  const double noise = tau * s.secondary.noise_power / (xi * g_s1);
  quad::SemiInfinite shape;
  shape.scale = 1.0 / std::sqrt(big_a);
  shape.decay = 3.0;
  const auto r = quad::semi_infinite(
      [&](double u) {
        return kTwoPi * lam_s * k_const * u * std::exp(-noise * std::pow(u, a) - big_a * u * u);
      },
      0.0, shape, {1e-10, 1e-14, 4000});
  return std::clamp(quad::checked(r, "closed-form secondary coverage"), 0.0, 1.0);
}

double coverage_primary_closed(double tau, const Scenario& s, const SpecialCaseParams& p) {
  if (!(tau >= 0.0)) throw std::domain_error("coverage threshold must be >= 0");
  const double a = p.alpha;
  const double xi = s.xi();
  const double lam_p = s.primary.bs_density;
  const double lam_s = s.secondary.bs_density;
  const double k_const = 1.0 / (kPi * s.primary.user_density);
  const double m = std::pow(s.primary_power() * p.gain, 2.0 / a);
  const double t2a = std::pow(tau, 2.0 / a);
  const double g_p1 = s.primary.antenna.main_gain;
  const double noise = p.interference_limited ? 0.0 : s.primary.noise_power;
  const auto gs = s.secondary.antenna.gains();
  const auto ws = s.secondary.antenna.weights();
  const auto gp = s.primary.antenna.gains();
  const auto wp = s.primary.antenna.weights();

  double own = 0.0;
  for (std::size_t k = 0; k < 2; ++k) {
    if (wp[k] > 0.0 && gp[k] > 0.0) {
      own += wp[k] * m * std::pow(gp[k] / g_p1, 2.0 / a) * rho(a, tau * gp[k] / g_p1);
    }
  }
  auto integrand = [&](double u) {
    const double ua = std::pow(u, a);
    double ex = tau * noise * ua / g_p1 + u * u * kPi * t2a * lam_p * own + kPi * lam_p * m * u * u;
    for (std::size_t k = 0; k < 2; ++k) {
      if (!(ws[k] > 0.0 && gs[k] > 0.0)) continue;
      const double c = tau * gs[k] * xi / g_p1;
      ex += u * u * kPi * t2a * lam_s * ws[k] * k_const * std::pow(xi * gs[k] / g_p1, 2.0 / a) *
            rho(a, c * ua);
      ex += kPi * lam_s * ws[k] * k_const / (1.0 + 1.0 / (c * ua));
    }
    return kTwoPi * lam_p * m * u * std::exp(-ex);
  };
  quad::SemiInfinite shape;
  shape.scale = 1.0 / std::sqrt(kPi * lam_p * m);
  shape.decay = 3.0;
  const auto r = quad::semi_infinite(integrand, 0.0, shape, {1e-9, 1e-14, 4000});
  return std::clamp(quad::checked(r, "closed-form primary coverage"), 0.0, 1.0);
}

}  // namespace mmshare
