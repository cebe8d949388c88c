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
#include <cstddef>
#include <functional>
#include <string>
#include <variant>

#include "mmshare/quadrature.hpp"

namespace mmshare {

enum class LinkType : int { LOS = 0, NLOS = 1 };

inline constexpr std::array<LinkType, 2> kLinkTypes = {LinkType::LOS, LinkType::NLOS};

constexpr LinkType complement(LinkType t) {
  return t == LinkType::LOS ? LinkType::NLOS : LinkType::LOS;
}
constexpr std::size_t index(LinkType t) { return static_cast<std::size_t>(t); }
const char* to_string(LinkType t);

/// LOS probability as a function of distance. The exponential family
/// p_L(r) = exp(-r/beta) has closed-form LOS/NLOS areas; anything else goes
/// through a user callable and quadrature.
class Blockage {
 public:
  static Blockage exponential(double decay_length);
  /// p_los must map [0, inf) into [0, 1] and be non-increasing.
  static Blockage custom(std::function<double(double)> p_los, std::string name);
  /// Every link is LOS.
  static Blockage none();

  double los(double r) const;
  double probability(LinkType t, double r) const;
  /// V_t(r) = 2 pi int_0^r p_t(u) u du.
  double area(LinkType t, double r) const;

  bool is_exponential() const { return kind_ == Kind::Exponential; }
  double decay_length() const { return beta_; }
  const std::string& name() const { return name_; }

 private:
  enum class Kind { Exponential, Custom, None };
  Kind kind_ = Kind::Exponential;
  double beta_ = 150.0;
  std::function<double(double)> custom_;
  std::string name_;
};

struct ChannelModel {
  Blockage blockage = Blockage::exponential(150.0);
  std::array<double, 2> alpha = {2.5, 3.5};
  std::array<double, 2> gain = {1e-6, 1e-6};

  double alpha_of(LinkType t) const { return alpha[index(t)]; }
  double gain_of(LinkType t) const { return gain[index(t)]; }
  /// Same exponent and near-field gain for both link types.
  bool equal_parameters() const { return alpha[0] == alpha[1] && gain[0] == gain[1]; }
  /// Throws std::invalid_argument naming the first violated invariant.
  void validate() const;
};

double los_probability(const ChannelModel& ch, double r);
double pathloss(const ChannelModel& ch, LinkType t, double r);

/// Two-level sectored pattern with G1 theta_b + G2 (2 pi - theta_b) = 2 pi.
struct AntennaPattern {
  double main_gain = 1.0;
  double side_gain = 1.0;
  double beamwidth = 6.283185307179586;

  /// Side gain solved from the conservation constraint.
  static AntennaPattern sectored(double main_gain, double beamwidth);
  static AntennaPattern omni();

  /// Probability a uniformly oriented beam shows its main lobe.
  double main_weight() const;
  /// Gains G_k and their probabilities, main lobe first.
  std::array<double, 2> gains() const { return {main_gain, side_gain}; }
  std::array<double, 2> weights() const { return {main_weight(), 1.0 - main_weight()}; }
  void validate() const;
};

/// theta is wrapped into [-pi, pi] first.
double antenna_gain(const AntennaPattern& pattern, double theta);
AntennaPattern ula_pattern(int n_antennas, double kappa);

struct FixedPower {
  double watts = 10.0;
};
struct InterferenceCap {
  double xi = 1e-12;
};
using PowerRule = std::variant<FixedPower, InterferenceCap>;

struct OperatorConfig {
  double bs_density = 30e-6;
  double user_density = 30e-6;
  AntennaPattern antenna = AntennaPattern::omni();
  PowerRule power = FixedPower{};
  double noise_power = 1e-11;

  void validate(const char* who) const;
};

/// E^t_T(r): radius inside which no type-t primary user can sit when the
/// home user is at distance r with type T.
double exclusion_radius(const ChannelModel& ch, LinkType home, LinkType other, double r);

/// X-bar = r^{alpha_T} / C_T, transmit power per unit of xi.
double normalized_power(const ChannelModel& ch, double r, LinkType home);
double secondary_tx_power(const ChannelModel& ch, double xi, double r, LinkType home);

/// Joint law of the distance and link type between a secondary BS and its
/// home primary user.
class HomeLinkDistribution {
 public:
  HomeLinkDistribution(ChannelModel channel, double primary_user_density);

  double pdf(double r, LinkType t) const;
  /// P[R <= r, T = t].
  double cdf(double r, LinkType t, const quad::Tolerance& tol = {1e-10, 0.0, 4000}) const;
  /// sum_T int_0^inf g(r, T) f(r, T) dr.
  double expect(const std::function<double(double, LinkType)>& g,
                const quad::Tolerance& tol = {1e-9, 0.0, 4000}) const;

  const ChannelModel& channel() const { return channel_; }
  double density() const { return lambda_; }
  /// Typical spacing of primary users, 1/sqrt(pi lambda).
  double length_scale() const;

 private:
  ChannelModel channel_;
  double lambda_;
};

double home_link_pdf(const HomeLinkDistribution& dist, double r, LinkType t);

/// E[g(X-bar)] with X-bar = R^{alpha_T} / C_T.
double normalized_power_moments(const HomeLinkDistribution& dist,
                                const std::function<double(double)>& g,
                                const quad::Tolerance& tol = {1e-9, 0.0, 4000});

}  // namespace mmshare
