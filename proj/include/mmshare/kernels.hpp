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

#include <array>
#include <memory>
#include <vector>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "mmshare/channel.hpp"
#include "mmshare/quadrature.hpp"

namespace mmshare {

/// Intensity kernel of a BS tier in scaled distance. A BS of link type t at
/// scaled distance v delivers average power c v^{-alpha_t}, and the scaled
/// positions of type-t links form a PPP of intensity lambda 2 pi kappa_t(v) v dv.
class Kernel {
 public:
  virtual ~Kernel() = default;
  virtual double value(LinkType t, double v) const = 0;
  /// 2 pi int_0^z kappa_t(v) v dv.
  virtual double void_mass(LinkType t, double z) const = 0;
};

/// Fixed transmit power P: kappa_t(v) = p_t(v (P C_t)^{1/alpha_t}) (P C_t)^{2/alpha_t}.
class FixedPowerKernel final : public Kernel {
 public:
  FixedPowerKernel(ChannelModel channel, double power);
  double value(LinkType t, double v) const override;
  double void_mass(LinkType t, double z) const override;
  double power() const { return power_; }

 private:
  ChannelModel channel_;
  double power_;
  std::array<double, 2> reach_;  // (P C_t)^{1/alpha_t}
};

/// Power-controlled secondary tier:
/// K_t(v) = E[p_t(v E^t_T(R)) E^t_T(R)^2] over the home link (R, T).
/// Evaluation goes through cubic B-spline tables of ln K_t and of the void
/// mass in ln v, with log-log extrapolation past the ends.
class RestrictedKernel final : public Kernel {
 public:
  struct TableSpec {
    double log_min = -18.0;
    double log_max = 14.0;
    std::size_t nodes = 801;
    double rel_tol = 1e-11;
  };

  /// threads <= 0 uses the OpenMP default for building the tables.
  explicit RestrictedKernel(HomeLinkDistribution home, TableSpec spec, int threads = 0);
  explicit RestrictedKernel(HomeLinkDistribution home) : RestrictedKernel(std::move(home), TableSpec{}) {}

  double value(LinkType t, double v) const override;
  double void_mass(LinkType t, double z) const override;

  /// Direct quadrature, bypassing the tables.
  double exact(LinkType t, double v, const quad::Tolerance& tol = {1e-10, 0.0, 4000}) const;
  double exact_void_mass(LinkType t, double z,
                         const quad::Tolerance& tol = {1e-10, 0.0, 4000}) const;

  const HomeLinkDistribution& home() const { return home_; }

 private:
  class LogTable {
   public:
    LogTable() = default;
    LogTable(std::vector<double> log_values, double log_min, double step);
    double operator()(double x) const;
    bool zero() const { return zero_; }

   private:
    std::shared_ptr<boost::math::interpolators::cardinal_cubic_b_spline<double>> spline_;
    double lo_ = 0.0, hi_ = 0.0, y_lo_ = 0.0, y_hi_ = 0.0, slope_lo_ = 0.0, slope_hi_ = 0.0;
    bool zero_ = false;
  };

  HomeLinkDistribution home_;
  TableSpec spec_;
  std::array<LogTable, 2> kernel_;
  std::array<LogTable, 2> void_;
};

}  // namespace mmshare
