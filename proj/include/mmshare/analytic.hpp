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

#include <memory>
#include <vector>

#include "mmshare/channel.hpp"
#include "mmshare/coverage_curve.hpp"
#include "mmshare/kernels.hpp"
#include "mmshare/montecarlo.hpp"
#include "mmshare/scenario.hpp"

namespace mmshare {

struct QuadratureSpec {
  /// Inner interference functionals.
  double rel = 1e-8;
  /// Outer integral over the serving distance.
  double outer_rel = 1e-7;
  double outer_abs = 1e-12;
  std::size_t max_subdivisions = 4000;
};

/// rho(alpha, tau) = int_{tau^{-1/alpha}}^inf 2v / (1 + v^alpha) dv; tau may
/// be +inf. Closed form for alpha = 4 and for tau = inf.
double rho(double alpha, double tau);
/// Always by quadrature; kept for cross-checking the closed forms.
double rho_quadrature(double alpha, double tau, double rel_tol = 1e-12);

/// The restricted-secondary kernel depends on the channel and the primary
/// user density only, so sweeps over xi can share it.
std::shared_ptr<const RestrictedKernel> make_restricted_kernel(const Scenario& s, int threads = 0);

/// Coverage and interference functionals of both operators in one scenario.
///
/// Each tier is described by a kernel in scaled distance (see Kernel): the
/// primary tier and an uncoordinated secondary use FixedPowerKernel, a
/// restricted secondary uses RestrictedKernel with received-power scale xi.
class AnalyticModel {
 public:
  explicit AnalyticModel(const Scenario& s, QuadratureSpec q = {},
                         std::shared_ptr<const RestrictedKernel> restricted = nullptr);

  const Scenario& scenario() const { return scenario_; }
  const QuadratureSpec& quadrature() const { return quad_; }

  double kernel_K(LinkType t, double u) const;
  double kernel_M(LinkType t, double u) const;

  /// sum_t B^{2/alpha_t} int_{(e/B)^{1/alpha_t}}^inf kappa_t(w B^{1/alpha_t}) 2 pi w / (1 + w^alpha_t) dw.
  double phi(const Kernel& kernel, double b, double e) const;

  double F_S(double b, double e) const;
  double F_P(double b) const;
  double E_P(double b, double e) const;
  double E_FS(double b, double xi) const;
  double E_NS(double b) const;

  /// Interference at the typical secondary user from other secondary BSs
  /// beyond exclusion e.
  double laplace_secondary_at_secondary(double s, double e) const;
  double laplace_primary_at_secondary(double s) const;
  double laplace_primary_at_primary(double s, double e) const;
  double laplace_secondary_at_primary(double s) const;

  double coverage_secondary(double tau) const;
  double coverage_primary(double tau) const;
  double coverage(mc::Operator which, double tau) const;

  /// One coverage value per threshold; serial reference and OpenMP version
  /// give identical results.
  CoverageCurve curve_serial(mc::Operator which, const std::vector<double>& thresholds) const;
  CoverageCurve curve(mc::Operator which, const std::vector<double>& thresholds, int threads) const;

 private:
  struct Tier {
    const Kernel* kernel = nullptr;
    double density = 0.0;
    AntennaPattern antenna;
    double scale = 1.0;
    double noise = 0.0;
    bool restricted = false;
  };

  double own_exponent(const Tier& tier, double s, double e) const;
  double cross_exponent(const Tier& cross, double s) const;
  double coverage_of(const Tier& serving, const Tier& cross, double tau) const;
  double void_exponent(const Tier& tier, LinkType t0, double u) const;
  double distance_scale(const Tier& tier, LinkType t0) const;

  Scenario scenario_;
  QuadratureSpec quad_;
  std::shared_ptr<const RestrictedKernel> restricted_;
  std::unique_ptr<FixedPowerKernel> primary_kernel_;
  std::unique_ptr<FixedPowerKernel> uncoordinated_kernel_;
  Tier primary_;
  Tier secondary_;
};

/// Equal LOS/NLOS parameters, derived from a scenario.
struct SpecialCaseParams {
  double alpha = 4.0;
  double gain = 1e-6;
  bool interference_limited = false;
  bool zero_side_lobe = false;

  /// Throws std::invalid_argument if the channel has unequal parameters,
  /// or a flag contradicts the scenario.
  static SpecialCaseParams from(const Scenario& s, bool interference_limited, bool zero_side_lobe);
};

/// Equal-parameter secondary coverage. Interference-limited: closed form;
/// otherwise a single integral with noise.
double coverage_secondary_closed(double tau, const Scenario& s, const SpecialCaseParams& p);
/// Equal-parameter primary coverage; keeps one outer integral.
double coverage_primary_closed(double tau, const Scenario& s, const SpecialCaseParams& p);

}  // namespace mmshare
