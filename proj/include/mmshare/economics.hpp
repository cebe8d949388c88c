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

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mmshare/analytic.hpp"
#include "mmshare/coverage_curve.hpp"
#include "mmshare/montecarlo.hpp"
#include "mmshare/scenario.hpp"

namespace mmshare {

/// 1 + 1.28 lambda_R / lambda_T: mean number of users sharing a BS.
double mean_load(double user_density, double bs_density);

struct LoadModel {
  double n_primary = 1.0;
  double n_secondary = 1.0;
  /// Hz.
  double bandwidth = 500e6;

  static LoadModel from_scenario(const Scenario& s, double bandwidth);
  double load(mc::Operator which) const;
  void validate() const;
};

enum class LogBase { Binary, Natural };

struct RateSettings {
  double bandwidth = 500e6;
  LogBase log_base = LogBase::Binary;
  /// Coverage level whose SINR defines the rate; 0.5 is the median.
  double coverage_level = 0.5;
  /// Bracket width at which the inverse coverage stops, linear SINR.
  double sinr_tolerance = 1e-4;
};

/// SINR needed for per-user rate rho: base^{rho n / W} - 1.
double sinr_for_rate(double rho, double load, double bandwidth, LogBase base = LogBase::Binary);

/// R^c(rho) from a tabulated curve, log-linear in the threshold between grid
/// points. Throws std::out_of_range outside the tabulated thresholds.
double rate_coverage(const CoverageCurve& curve, double load, double bandwidth, double rho,
                     LogBase base = LogBase::Binary);
/// Same, calling the analytic engine at the exact threshold.
double rate_coverage(const AnalyticModel& model, mc::Operator which, double load, double bandwidth,
                     double rho, LogBase base = LogBase::Binary);

/// tau with coverage(tau) = level for a non-increasing coverage function.
/// The bracket grows from [1e-2, 1e2] up to [1e-15, 1e15]; then
/// std::runtime_error. Stops when the bracket is narrower than tol.
double inverse_coverage(const std::function<double(double)>& coverage, double level, double tol = 1e-4);

/// W lambda_R / n log(1 + tau): area rate of all users at SINR tau, bits/s/m^2.
double area_rate(double sinr, double user_density, double load, double bandwidth,
                 LogBase base = LogBase::Binary);

struct OperatorRate {
  double sinr = 0.0;
  double rate = 0.0;
};

/// Analytic median (or other level) SINR and area rate of one operator.
OperatorRate median_rate(const AnalyticModel& model, mc::Operator which, const RateSettings& rs);
/// Same from Monte Carlo samples.
OperatorRate median_rate(const std::vector<double>& sinr, const Scenario& s, mc::Operator which,
                         const RateSettings& rs);

/// Revenue of the two operators and the three license payments, each a
/// map from area rate to currency per area.
class PricingModel {
 public:
  virtual ~PricingModel() = default;
  virtual double revenue_primary(double r_p) const = 0;
  virtual double revenue_secondary(double r_s) const = 0;
  /// Primary to the central authority.
  virtual double license_primary(double r_p) const = 0;
  /// Secondary to the central authority.
  virtual double license_secondary_central(double r_s) const = 0;
  /// Secondary to the primary.
  virtual double license_secondary_primary(double r_s) const = 0;
};

class LinearPricing final : public PricingModel {
 public:
  struct Constants {
    double m_p = 1.0;
    double m_s = 1.0;
    double pi_p = 0.25;
    double pi_sc = 0.125;
    double pi_sp = 0.25;
  };

  LinearPricing() : LinearPricing(Constants{}) {}
  explicit LinearPricing(Constants c);

  double revenue_primary(double r) const override { return c_.m_p * r; }
  double revenue_secondary(double r) const override { return c_.m_s * r; }
  double license_primary(double r) const override { return c_.pi_p * r; }
  double license_secondary_central(double r) const override { return c_.pi_sc * r; }
  double license_secondary_primary(double r) const override { return c_.pi_sp * r; }
  const Constants& constants() const { return c_; }

 private:
  Constants c_;
};

/// Arbitrary maps; check_pricing verifies the monotonicity contract.
class FunctionPricing final : public PricingModel {
 public:
  using Map = std::function<double(double)>;
  FunctionPricing(Map m_p, Map m_s, Map p_p, Map p_sc, Map p_sp);

  double revenue_primary(double r) const override { return m_p_(r); }
  double revenue_secondary(double r) const override { return m_s_(r); }
  double license_primary(double r) const override { return p_p_(r); }
  double license_secondary_central(double r) const override { return p_sc_(r); }
  double license_secondary_primary(double r) const override { return p_sp_(r); }

 private:
  Map m_p_, m_s_, p_p_, p_sc_, p_sp_;
};

/// Throws std::invalid_argument naming the first map that is negative or
/// decreasing on `points` rates spread over [0, max_rate].
void check_pricing(const PricingModel& p, double max_rate, std::size_t points = 257);

struct UtilityReport {
  double xi = 0.0;
  double sinr_p = 0.0;
  double sinr_s = 0.0;
  double r_p = 0.0;
  double r_s = 0.0;
  double revenue_p = 0.0;
  double revenue_s = 0.0;
  double pay_p = 0.0;
  double pay_sc = 0.0;
  double pay_sp = 0.0;
  double u_p = 0.0;
  double u_s = 0.0;
  double u_c = 0.0;
  /// Empty when the point evaluated cleanly.
  std::string error;

  bool ok() const { return error.empty(); }
};

/// U_P = M_P - P_P + P_SP, U_S = M_S - P_SC - P_SP, U_C = P_P + P_SC.
UtilityReport utilities(double r_p, double r_s, const PricingModel& pricing);

struct XiSweep {
  std::vector<UtilityReport> rows;
  /// Indices into rows; empty if no row evaluated.
  std::optional<std::size_t> argmax_u_p;
  std::optional<std::size_t> argmax_u_c;
  std::optional<std::size_t> argmax_u_pc;
};

/// -130..-90 dB, 21 points, in watts.
std::vector<double> default_xi_grid();

/// Median rates and utilities at each xi. The restricted kernel does not
/// depend on xi and is built once. Failing points keep their error text
/// and the sweep goes on.
XiSweep sweep_xi_serial(const Scenario& s, const std::vector<double>& xi_grid,
                        const PricingModel& pricing, const RateSettings& rs,
                        const QuadratureSpec& q = {});
XiSweep sweep_xi(const Scenario& s, const std::vector<double>& xi_grid, const PricingModel& pricing,
                 const RateSettings& rs, int threads, const QuadratureSpec& q = {});

/// Both operators transmit one power P_u in the band, chosen so that
/// lambda_P P_P + lambda_S E[P_S] = (lambda_P + lambda_S) P_u.
Scenario equal_power_sharing(const Scenario& restricted);

struct ModeRow {
  double lambda_b = 0.0;
  double xi = 0.0;
  /// Area rates of operator A: in its own band, in B's band, and summed.
  double restricted_primary = 0.0;
  double restricted_secondary = 0.0;
  double restricted_sum = 0.0;
  double uncoordinated_primary = 0.0;
  double uncoordinated_secondary = 0.0;
  double uncoordinated_sum = 0.0;
  std::string error;

  bool ok() const { return error.empty(); }
};

/// Two operators with mirrored licenses. Operator A (BS density lambda_a,
/// users as the primary of `base`) is primary in band A; operator B (each
/// of lambda_b, users as the secondary of `base`) is primary in band B.
/// Rows run over lambda_b outer, xi inner.
std::vector<ModeRow> compare_sharing_modes(const Scenario& base, double lambda_a,
                                           const std::vector<double>& lambda_b,
                                           const std::vector<double>& xi_grid, const RateSettings& rs,
                                           int threads, const QuadratureSpec& q = {});

/// Largest restricted-minus-uncoordinated sum over xi for one lambda_b.
double best_mode_gap(const std::vector<ModeRow>& rows, double lambda_b);

struct DensityRow {
  double lambda_st = 0.0;
  OperatorRate primary;
  OperatorRate secondary;
  std::string error;
};

/// Analytic medians as the secondary BS density varies.
std::vector<DensityRow> sweep_density(const Scenario& s, const std::vector<double>& densities,
                                      const RateSettings& rs, int threads, const QuadratureSpec& q = {});

struct BeamRow {
  int antennas = 1;
  double beamwidth = 0.0;
  OperatorRate primary;
  OperatorRate secondary;
  std::string error;
};

/// Analytic medians as the secondary array grows (ULA with fixed kappa).
/// With both_operators the primary array follows too.
std::vector<BeamRow> sweep_beamwidth(const Scenario& s, const std::vector<int>& antennas, double kappa,
                                     bool both_operators, const RateSettings& rs, int threads,
                                     const QuadratureSpec& q = {});

}  // namespace mmshare
