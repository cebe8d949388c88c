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

#include "mmshare/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mmshare/units.hpp"

namespace mmshare {

double Scenario::xi() const {
  if (const auto* cap = std::get_if<InterferenceCap>(&secondary.power)) return cap->xi;
  throw std::logic_error("scenario: secondary operator is not under an interference cap");
}

void Scenario::validate() const {
  channel.validate();
  primary.validate("primary");
  secondary.validate("secondary");
  if (!std::holds_alternative<FixedPower>(primary.power)) {
    throw std::invalid_argument("primary: power rule must be a fixed power");
  }
  if (!(guard_radius > 0.0)) throw std::invalid_argument("scenario: guard_radius must be positive");
  if (!(window_radius > guard_radius)) {
    throw std::invalid_argument("scenario: window_radius must exceed guard_radius");
  }
  if (n_realizations < 1) throw std::invalid_argument("scenario: n_realizations must be >= 1");
}

Scenario baseline_scenario(double secondary_bs_per_km2) {
  Scenario s;
  s.channel = ChannelModel{};
  s.primary.bs_density = per_km2(30.0);
  s.primary.user_density = per_km2(150.0);
  s.primary.antenna = ula_pattern(64, 0.9);
  s.primary.power = FixedPower{from_dbm(40.0)};
  s.primary.noise_power = from_db(-110.0);
  s.secondary.bs_density = per_km2(secondary_bs_per_km2);
  s.secondary.user_density = per_km2(150.0);
  s.secondary.antenna = ula_pattern(64, 0.9);
  s.secondary.power = InterferenceCap{from_db(-120.0)};
  s.secondary.noise_power = from_db(-110.0);
  apply_default_geometry(s);
  return s;
}

double default_window_radius(const Scenario& s) {
  const double sparse = std::min(s.primary.bs_density, s.secondary.bs_density);
  const double cell = 1.0 / std::sqrt(kPi * sparse);
  const double beta = s.channel.blockage.is_exponential() ? s.channel.blockage.decay_length() : 0.0;
  return 5.0 * std::max(cell, beta);
}

double default_guard_radius(const Scenario& s, double window_radius) {
  return std::min(0.5 * window_radius, 4.0 / std::sqrt(kPi * s.primary.user_density));
}

void apply_default_geometry(Scenario& s) {
  if (s.window_radius == 0.0) s.window_radius = default_window_radius(s);
  if (s.guard_radius == 0.0) s.guard_radius = default_guard_radius(s, s.window_radius);
}

double mean_secondary_power(const Scenario& s) {
  const HomeLinkDistribution home(s.channel, s.primary.user_density);
  const double mean_xbar =
      home.expect([&](double r, LinkType t) { return normalized_power(s.channel, r, t); });
  return s.xi() * mean_xbar;
}

Scenario uncoordinated_mode(const Scenario& restricted) {
  Scenario out = restricted;
  out.secondary.power = FixedPower{mean_secondary_power(restricted)};
  return out;
}

}  // namespace mmshare
