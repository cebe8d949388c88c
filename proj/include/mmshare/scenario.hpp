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
#include <cstdint>

#include "mmshare/channel.hpp"

namespace mmshare {

/// Two operators sharing a band: the primary transmits at fixed power, the
/// secondary either obeys an interference cap at its home primary user
/// (restricted licensing) or transmits at fixed power (uncoordinated).
struct Scenario {
  ChannelModel channel;
  OperatorConfig primary;
  OperatorConfig secondary;
  /// Base stations are dropped in a disk of this radius around the typical
  /// user. Primary users extend guard_radius further so that BSs near the
  /// rim still find their true home user.
  double window_radius = 0.0;
  double guard_radius = 0.0;
  std::uint64_t seed = 1;
  std::size_t n_realizations = 20000;

  bool restricted() const { return std::holds_alternative<InterferenceCap>(secondary.power); }
  /// Interference cap; throws when the secondary is not restricted.
  double xi() const;
  double primary_power() const { return std::get<FixedPower>(primary.power).watts; }
  void validate() const;
};

/// Reference deployment: beta = 150 m, alpha = 2.5 / 3.5, C = -60 dB,
/// 30 primary BSs and 150 users per km^2 for each operator, P_P = 40 dBm,
/// xi = -120 dB, noise -110 dB, and 64-element ULAs with kappa = 0.9 on both
/// sides. Window and guard radii are filled in.
Scenario baseline_scenario(double secondary_bs_per_km2 = 30.0);

/// 5 x max(mean cell radius of the sparser BS tier, LOS decay length).
double default_window_radius(const Scenario& s);
/// min(window / 2, four primary-user spacings).
double default_guard_radius(const Scenario& s, double window_radius);
/// Fills window and guard radii that were left at zero.
void apply_default_geometry(Scenario& s);

/// E[P_S] = xi E[X-bar] under restricted licensing.
double mean_secondary_power(const Scenario& s);

/// Secondary BSs transmit at E[P_S] regardless of where primary users sit.
Scenario uncoordinated_mode(const Scenario& restricted);

}  // namespace mmshare
