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

#include "mmshare/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <exception>
#include <stdexcept>

namespace mmshare {

FixedPowerKernel::FixedPowerKernel(ChannelModel channel, double power)
    : channel_(std::move(channel)), power_(power) {
  channel_.validate();
  if (!(power_ > 0.0)) throw std::invalid_argument("fixed-power kernel: power must be positive");
  for (LinkType t : kLinkTypes) {
    reach_[index(t)] = std::pow(power_ * channel_.gain_of(t), 1.0 / channel_.alpha_of(t));
  }
}

double FixedPowerKernel::value(LinkType t, double v) const {
  const double a = reach_[index(t)];
  return channel_.blockage.probability(t, v * a) * a * a;
}

double FixedPowerKernel::void_mass(LinkType t, double z) const {
  return channel_.blockage.area(t, z * reach_[index(t)]);
}

RestrictedKernel::LogTable::LogTable(std::vector<double> log_values, double log_min, double step) {
  std::size_t infinite = 0;
  for (double y : log_values) {
    if (std::isinf(y) && y < 0.0) ++infinite;
    else if (!std::isfinite(y)) throw std::runtime_error("kernel table: non-finite entry");
  }
  if (infinite == log_values.size()) {
    zero_ = true;
    return;
  }
  if (infinite > 0) throw std::runtime_error("kernel table: kernel vanishes on part of the grid");
  lo_ = log_min;
  hi_ = log_min + step * static_cast<double>(log_values.size() - 1);
  y_lo_ = log_values.front();
  y_hi_ = log_values.back();
  spline_ = std::make_shared<boost::math::interpolators::cardinal_cubic_b_spline<double>>(
      log_values.begin(), log_values.end(), log_min, step);
  slope_lo_ = spline_->prime(lo_);
  slope_hi_ = spline_->prime(hi_);
}

double RestrictedKernel::LogTable::operator()(double x) const {
  if (zero_) return 0.0;
  if (x < lo_) return std::exp(y_lo_ + slope_lo_ * (x - lo_));
  if (x > hi_) return std::exp(y_hi_ + slope_hi_ * (x - hi_));
  return std::exp((*spline_)(x));
}

RestrictedKernel::RestrictedKernel(HomeLinkDistribution home, TableSpec spec, int threads)
    : home_(std::move(home)), spec_(spec) {
  if (spec_.nodes < 8 || !(spec_.log_max > spec_.log_min)) {
    throw std::invalid_argument("kernel table: bad grid");
  }
  const std::size_t n = spec_.nodes;
  const double step = (spec_.log_max - spec_.log_min) / static_cast<double>(n - 1);
  const quad::Tolerance tol{spec_.rel_tol, 0.0, 4000};

  // Rows: K_L, K_N, void_L, void_N.
  std::array<std::vector<double>, 4> rows;
  for (auto& r : rows) r.resize(n);
  std::exception_ptr failure;
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(nt)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    try {
      const double x = std::exp(spec_.log_min + step * static_cast<double>(i));
      const auto k = static_cast<std::size_t>(i);
      rows[0][k] = std::log(exact(LinkType::LOS, x, tol));
      rows[1][k] = std::log(exact(LinkType::NLOS, x, tol));
      rows[2][k] = std::log(exact_void_mass(LinkType::LOS, x, tol));
      rows[3][k] = std::log(exact_void_mass(LinkType::NLOS, x, tol));
    } catch (...) {
#pragma omp critical(mmshare_kernel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  kernel_[0] = LogTable(rows[0], spec_.log_min, step);
  kernel_[1] = LogTable(rows[1], spec_.log_min, step);
  void_[0] = LogTable(rows[2], spec_.log_min, step);
  void_[1] = LogTable(rows[3], spec_.log_min, step);
}

double RestrictedKernel::value(LinkType t, double v) const {
  if (v < 0.0) throw std::domain_error("kernel needs v >= 0");
  if (v == 0.0) return exact(t, 0.0);
  return kernel_[index(t)](std::log(v));
}

double RestrictedKernel::void_mass(LinkType t, double z) const {
  if (z <= 0.0) return 0.0;
  return void_[index(t)](std::log(z));
}

double RestrictedKernel::exact(LinkType t, double v, const quad::Tolerance& tol) const {
  const ChannelModel& ch = home_.channel();
  return home_.expect(
      [&](double r, LinkType home_type) {
        const double e = exclusion_radius(ch, home_type, t, r);
        return ch.blockage.probability(t, v * e) * e * e;
      },
      tol);
}

double RestrictedKernel::exact_void_mass(LinkType t, double z, const quad::Tolerance& tol) const {
  const ChannelModel& ch = home_.channel();
  return home_.expect(
      [&](double r, LinkType home_type) {
        return ch.blockage.area(t, z * exclusion_radius(ch, home_type, t, r));
      },
      tol);
}

}  // namespace mmshare
