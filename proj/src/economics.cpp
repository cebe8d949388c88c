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

#include "mmshare/economics.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>

#include "mmshare/units.hpp"

namespace mmshare {

namespace {

double log_of(double x, LogBase base) { return base == LogBase::Binary ? std::log2(x) : std::log(x); }

int thread_count(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

// Runs body(i) for i < n on `threads` threads; an exception from one item
// goes to fail(i, what) and the rest still run.
template <class Body, class Fail>
void for_each_item(std::size_t n, int threads, Body body, Fail fail) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count(threads))
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(n); ++k) {
    const auto i = static_cast<std::size_t>(k);
    try {
      body(i);
    } catch (const std::exception& e) {
      fail(i, e.what());
    } catch (...) {
      fail(i, "unknown error");
    }
  }
}

Scenario with_xi(const Scenario& s, double xi) {
  Scenario out = s;
  out.secondary.power = InterferenceCap{xi};
  return out;
}

UtilityReport evaluate_xi(const Scenario& s, double xi, const PricingModel& pricing, const RateSettings& rs,
                          const QuadratureSpec& q, const std::shared_ptr<const RestrictedKernel>& kernel) {
  const AnalyticModel m(with_xi(s, xi), q, kernel);
  const OperatorRate p = median_rate(m, mc::Operator::Primary, rs);
  const OperatorRate r = median_rate(m, mc::Operator::Secondary, rs);
  UtilityReport u = utilities(p.rate, r.rate, pricing);
  u.xi = xi;
  u.sinr_p = p.sinr;
  u.sinr_s = r.sinr;
  return u;
}

std::optional<std::size_t> argmax(const std::vector<UtilityReport>& rows,
                                  double (*key)(const UtilityReport&)) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].ok()) continue;
    if (!best || key(rows[i]) > key(rows[*best])) best = i;
  }
  return best;
}

void fill_argmax(XiSweep& out) {
  out.argmax_u_p = argmax(out.rows, [](const UtilityReport& u) { return u.u_p; });
  out.argmax_u_c = argmax(out.rows, [](const UtilityReport& u) { return u.u_c; });
  out.argmax_u_pc = argmax(out.rows, [](const UtilityReport& u) { return u.u_p + u.u_c; });
}

void check_xi_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("xi grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw std::invalid_argument("xi grid: values must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw std::invalid_argument("xi grid: values must ascend");
  }
}

}  // namespace

double mean_load(double user_density, double bs_density) {
  if (!(user_density >= 0.0) || !(bs_density > 0.0)) {
    throw std::invalid_argument("mean load needs user density >= 0 and BS density > 0");
  }
  return 1.0 + 1.28 * user_density / bs_density;
}

LoadModel LoadModel::from_scenario(const Scenario& s, double bandwidth) {
  LoadModel m;
  m.n_primary = mean_load(s.primary.user_density, s.primary.bs_density);
  m.n_secondary = mean_load(s.secondary.user_density, s.secondary.bs_density);
  m.bandwidth = bandwidth;
  m.validate();
  return m;
}

double LoadModel::load(mc::Operator which) const {
  return which == mc::Operator::Primary ? n_primary : n_secondary;
}

void LoadModel::validate() const {
  if (!(n_primary >= 1.0) || !(n_secondary >= 1.0)) throw std::invalid_argument("load: n must be >= 1");
  if (!(bandwidth > 0.0)) throw std::invalid_argument("load: bandwidth must be positive");
}

double sinr_for_rate(double rho, double load, double bandwidth, LogBase base) {
  if (!(rho >= 0.0)) throw std::domain_error("rate threshold must be >= 0");
  const double x = rho * load / bandwidth;
  return base == LogBase::Binary ? std::exp2(x) - 1.0 : std::expm1(x);
}

double rate_coverage(const CoverageCurve& curve, double load, double bandwidth, double rho, LogBase base) {
  const double tau = sinr_for_rate(rho, load, bandwidth, base);
  if (tau == 0.0) return 1.0;
  const auto& t = curve.thresholds;
  if (t.empty() || tau < t.front() || tau > t.back()) {
    throw std::out_of_range("rate coverage: SINR threshold outside the tabulated curve");
  }
  const auto hi = static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), tau) - t.begin());
  if (t[hi] == tau || hi == 0) return curve.values[hi];
  const std::size_t lo = hi - 1;
  const double w = std::log(tau / t[lo]) / std::log(t[hi] / t[lo]);
  return curve.values[lo] + w * (curve.values[hi] - curve.values[lo]);
}

double rate_coverage(const AnalyticModel& model, mc::Operator which, double load, double bandwidth, double rho,
                     LogBase base) {
  const double tau = sinr_for_rate(rho, load, bandwidth, base);
  if (tau == 0.0) return 1.0;
  return model.coverage(which, tau);
}

double inverse_coverage(const std::function<double(double)>& coverage, double level, double tol) {
  if (!(level > 0.0 && level < 1.0)) throw std::domain_error("coverage level must lie in (0, 1)");
  if (!(tol > 0.0)) throw std::invalid_argument("inverse coverage: tolerance must be positive");
  double lo = 1e-2;
  double hi = 1e2;
  while (coverage(lo) < level) {
    hi = lo;
    lo *= 1e-2;
    if (lo < 1e-15) throw std::runtime_error("inverse coverage: coverage stays below the level");
  }
  while (coverage(hi) > level) {
    lo = hi;
    hi *= 1e2;
    if (hi > 1e15) throw std::runtime_error("inverse coverage: coverage stays above the level");
  }
  // Bracketed root in ln tau; TOMS 748 needs far fewer coverage calls than
  // plain bisection for the same final bracket.
  auto f = [&](double x) { return coverage(std::exp(x)) - level; };
  auto narrow = [tol](double a, double b) { return std::exp(b) - std::exp(a) <= tol; };
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(f, std::log(lo), std::log(hi), narrow, iters);
  return std::exp(0.5 * (a + b));
}

double area_rate(double sinr, double user_density, double load, double bandwidth, LogBase base) {
  if (!(sinr >= 0.0)) throw std::domain_error("area rate needs SINR >= 0");
  return bandwidth * user_density / load * log_of(1.0 + sinr, base);
}

OperatorRate median_rate(const AnalyticModel& model, mc::Operator which, const RateSettings& rs) {
  const Scenario& s = model.scenario();
  const OperatorConfig& op = which == mc::Operator::Primary ? s.primary : s.secondary;
  OperatorRate out;
  out.sinr = inverse_coverage([&](double tau) { return model.coverage(which, tau); }, rs.coverage_level,
                              rs.sinr_tolerance);
  out.rate = area_rate(out.sinr, op.user_density, mean_load(op.user_density, op.bs_density), rs.bandwidth,
                       rs.log_base);
  return out;
}

OperatorRate median_rate(const std::vector<double>& sinr, const Scenario& s, mc::Operator which,
                         const RateSettings& rs) {
  const OperatorConfig& op = which == mc::Operator::Primary ? s.primary : s.secondary;
  OperatorRate out;
  out.sinr = mc::empirical_quantile(sinr, 1.0 - rs.coverage_level);
  out.rate = area_rate(out.sinr, op.user_density, mean_load(op.user_density, op.bs_density), rs.bandwidth,
                       rs.log_base);
  return out;
}

LinearPricing::LinearPricing(Constants c) : c_(c) {
  if (!(c_.m_p >= 0.0 && c_.m_s >= 0.0 && c_.pi_p >= 0.0 && c_.pi_sc >= 0.0 && c_.pi_sp >= 0.0)) {
    throw std::invalid_argument("linear pricing: constants must be >= 0");
  }
}

FunctionPricing::FunctionPricing(Map m_p, Map m_s, Map p_p, Map p_sc, Map p_sp)
    : m_p_(std::move(m_p)), m_s_(std::move(m_s)), p_p_(std::move(p_p)), p_sc_(std::move(p_sc)),
      p_sp_(std::move(p_sp)) {
  if (!m_p_ || !m_s_ || !p_p_ || !p_sc_ || !p_sp_) throw std::invalid_argument("pricing: empty map");
}

void check_pricing(const PricingModel& p, double max_rate, std::size_t points) {
  if (!(max_rate > 0.0) || points < 2) throw std::invalid_argument("check_pricing: bad grid");
  struct Named {
    const char* name;
    double (PricingModel::*fn)(double) const;
  };
  const Named maps[] = {{"M_P", &PricingModel::revenue_primary},
                        {"M_S", &PricingModel::revenue_secondary},
                        {"P_P", &PricingModel::license_primary},
                        {"P_SC", &PricingModel::license_secondary_central},
                        {"P_SP", &PricingModel::license_secondary_primary}};
  for (const auto& m : maps) {
    double prev = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points; ++i) {
      const double r = max_rate * static_cast<double>(i) / static_cast<double>(points - 1);
      const double v = (p.*m.fn)(r);
      if (!(v >= 0.0)) throw std::invalid_argument(std::string("pricing: ") + m.name + " is negative");
      if (v < prev) throw std::invalid_argument(std::string("pricing: ") + m.name + " decreases");
      prev = v;
    }
  }
}

UtilityReport utilities(double r_p, double r_s, const PricingModel& pricing) {
  if (!(r_p >= 0.0) || !(r_s >= 0.0)) throw std::domain_error("utilities need rates >= 0");
  UtilityReport u;
  u.r_p = r_p;
  u.r_s = r_s;
  u.revenue_p = pricing.revenue_primary(r_p);
  u.revenue_s = pricing.revenue_secondary(r_s);
  u.pay_p = pricing.license_primary(r_p);
  u.pay_sc = pricing.license_secondary_central(r_s);
  u.pay_sp = pricing.license_secondary_primary(r_s);
  u.u_p = u.revenue_p - u.pay_p + u.pay_sp;
  u.u_s = u.revenue_s - u.pay_sc - u.pay_sp;
  u.u_c = u.pay_p + u.pay_sc;
  return u;
}

std::vector<double> default_xi_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 20; ++i) g.push_back(from_db(-130.0 + 2.0 * i));
  return g;
}

XiSweep sweep_xi_serial(const Scenario& s, const std::vector<double>& xi_grid, const PricingModel& pricing,
                        const RateSettings& rs, const QuadratureSpec& q) {
  check_xi_grid(xi_grid);
  const auto kernel = make_restricted_kernel(with_xi(s, xi_grid.front()), 1);
  XiSweep out;
  for (double xi : xi_grid) {
    try {
      out.rows.push_back(evaluate_xi(s, xi, pricing, rs, q, kernel));
    } catch (const std::exception& e) {
      UtilityReport bad;
      bad.xi = xi;
      bad.error = e.what();
      out.rows.push_back(bad);
    }
  }
  fill_argmax(out);
  return out;
}

XiSweep sweep_xi(const Scenario& s, const std::vector<double>& xi_grid, const PricingModel& pricing,
                 const RateSettings& rs, int threads, const QuadratureSpec& q) {
  check_xi_grid(xi_grid);
  const auto kernel = make_restricted_kernel(with_xi(s, xi_grid.front()), threads);
  XiSweep out;
  out.rows.resize(xi_grid.size());
  for_each_item(
      xi_grid.size(), threads,
      [&](std::size_t i) { out.rows[i] = evaluate_xi(s, xi_grid[i], pricing, rs, q, kernel); },
      [&](std::size_t i, const char* what) {
        out.rows[i] = UtilityReport{};
        out.rows[i].xi = xi_grid[i];
        out.rows[i].error = what;
      });
  fill_argmax(out);
  return out;
}

Scenario equal_power_sharing(const Scenario& restricted) {
  const double lp = restricted.primary.bs_density;
  const double ls = restricted.secondary.bs_density;
  const double p = (lp * restricted.primary_power() + ls * mean_secondary_power(restricted)) / (lp + ls);
  Scenario out = restricted;
  out.primary.power = FixedPower{p};
  out.secondary.power = FixedPower{p};
  return out;
}

std::vector<ModeRow> compare_sharing_modes(const Scenario& base, double lambda_a,
                                           const std::vector<double>& lambda_b,
                                           const std::vector<double>& xi_grid, const RateSettings& rs,
                                           int threads, const QuadratureSpec& q) {
  check_xi_grid(xi_grid);
  if (!(lambda_a > 0.0)) throw std::invalid_argument("compare modes: lambda_a must be positive");
  for (double lb : lambda_b) {
    if (!(lb > 0.0)) throw std::invalid_argument("compare modes: lambda_b must be positive");
  }
  // Operator A owns the primary side of `base`, operator B the secondary.
  const OperatorConfig a = base.primary;
  OperatorConfig b = base.secondary;
  b.power = base.primary.power;

  auto band = [&](const OperatorConfig& owner, const OperatorConfig& guest, double owner_bs, double guest_bs,
                  double xi) {
    Scenario s = base;
    s.primary = owner;
    s.primary.bs_density = owner_bs;
    s.secondary = guest;
    s.secondary.bs_density = guest_bs;
    s.secondary.power = InterferenceCap{xi};
    s.window_radius = 0.0;
    s.guard_radius = 0.0;
    apply_default_geometry(s);
    return s;
  };

  const auto kernel_a = make_restricted_kernel(band(a, b, lambda_a, lambda_a, xi_grid.front()), threads);
  const auto kernel_b = make_restricted_kernel(band(b, a, lambda_a, lambda_a, xi_grid.front()), threads);

  std::vector<ModeRow> rows(lambda_b.size() * xi_grid.size());
  for_each_item(
      rows.size(), threads,
      [&](std::size_t i) {
        ModeRow& row = rows[i];
        row.lambda_b = lambda_b[i / xi_grid.size()];
        row.xi = xi_grid[i % xi_grid.size()];
        const Scenario in_a = band(a, b, lambda_a, row.lambda_b, row.xi);
        const Scenario in_b = band(b, a, row.lambda_b, lambda_a, row.xi);
        const AnalyticModel ra(in_a, q, kernel_a);
        const AnalyticModel rb(in_b, q, kernel_b);
        row.restricted_primary = median_rate(ra, mc::Operator::Primary, rs).rate;
        row.restricted_secondary = median_rate(rb, mc::Operator::Secondary, rs).rate;
        row.restricted_sum = row.restricted_primary + row.restricted_secondary;
        const AnalyticModel ua(equal_power_sharing(in_a), q);
        const AnalyticModel ub(equal_power_sharing(in_b), q);
        row.uncoordinated_primary = median_rate(ua, mc::Operator::Primary, rs).rate;
        row.uncoordinated_secondary = median_rate(ub, mc::Operator::Secondary, rs).rate;
        row.uncoordinated_sum = row.uncoordinated_primary + row.uncoordinated_secondary;
      },
      [&](std::size_t i, const char* what) {
        rows[i].lambda_b = lambda_b[i / xi_grid.size()];
        rows[i].xi = xi_grid[i % xi_grid.size()];
        rows[i].error = what;
      });
  return rows;
}

double best_mode_gap(const std::vector<ModeRow>& rows, double lambda_b) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& r : rows) {
    if (r.ok() && r.lambda_b == lambda_b) best = std::max(best, r.restricted_sum - r.uncoordinated_sum);
  }
  if (std::isinf(best)) throw std::invalid_argument("best_mode_gap: no evaluated row for this density");
  return best;
}

std::vector<DensityRow> sweep_density(const Scenario& s, const std::vector<double>& densities,
                                      const RateSettings& rs, int threads, const QuadratureSpec& q) {
  std::shared_ptr<const RestrictedKernel> kernel;
  if (s.restricted()) kernel = make_restricted_kernel(s, threads);
  std::vector<DensityRow> rows(densities.size());
  for_each_item(
      densities.size(), threads,
      [&](std::size_t i) {
        rows[i].lambda_st = densities[i];
        Scenario sd = s;
        sd.secondary.bs_density = densities[i];
        const AnalyticModel m(sd, q, kernel);
        rows[i].primary = median_rate(m, mc::Operator::Primary, rs);
        rows[i].secondary = median_rate(m, mc::Operator::Secondary, rs);
      },
      [&](std::size_t i, const char* what) {
        rows[i].lambda_st = densities[i];
        rows[i].error = what;
      });
  return rows;
}

std::vector<BeamRow> sweep_beamwidth(const Scenario& s, const std::vector<int>& antennas, double kappa,
                                     bool both_operators, const RateSettings& rs, int threads,
                                     const QuadratureSpec& q) {
  std::shared_ptr<const RestrictedKernel> kernel;
  if (s.restricted()) kernel = make_restricted_kernel(s, threads);
  std::vector<BeamRow> rows(antennas.size());
  for_each_item(
      antennas.size(), threads,
      [&](std::size_t i) {
        rows[i].antennas = antennas[i];
        // A single element only exists as an omni pattern.
        const AntennaPattern ant = ula_pattern(antennas[i], antennas[i] == 1 ? 1.0 : kappa);
        rows[i].beamwidth = ant.beamwidth;
        Scenario sb = s;
        sb.secondary.antenna = ant;
        if (both_operators) sb.primary.antenna = ant;
        const AnalyticModel m(sb, q, kernel);
        rows[i].primary = median_rate(m, mc::Operator::Primary, rs);
        rows[i].secondary = median_rate(m, mc::Operator::Secondary, rs);
      },
      [&](std::size_t i, const char* what) {
        rows[i].antennas = antennas[i];
        rows[i].error = what;
      });
  return rows;
}

}  // namespace mmshare
