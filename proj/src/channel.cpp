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

#include "mmshare/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "mmshare/units.hpp"

namespace mmshare {

const char* to_string(LinkType t) { return t == LinkType::LOS ? "LOS" : "NLOS"; }

Blockage Blockage::exponential(double decay_length) {
  if (!(decay_length > 0.0) || !std::isfinite(decay_length)) {
    throw std::invalid_argument("blockage: decay length beta must be positive and finite");
  }
  Blockage b;
  b.kind_ = Kind::Exponential;
  b.beta_ = decay_length;
  b.name_ = "exponential";
  return b;
}

Blockage Blockage::custom(std::function<double(double)> p_los, std::string name) {
  if (!p_los) throw std::invalid_argument("blockage: empty LOS probability function");
  Blockage b;
  b.kind_ = Kind::Custom;
  b.beta_ = 0.0;
  b.custom_ = std::move(p_los);
  b.name_ = std::move(name);
  return b;
}

Blockage Blockage::none() {
  Blockage b;
  b.kind_ = Kind::None;
  b.beta_ = 0.0;
  b.name_ = "none";
  return b;
}

double Blockage::los(double r) const {
  if (r < 0.0 || std::isnan(r)) throw std::domain_error("LOS probability needs r >= 0");
  switch (kind_) {
    case Kind::Exponential:
      return std::exp(-r / beta_);
    case Kind::None:
      return 1.0;
    case Kind::Custom:
      break;
  }
  return custom_(r);
}

double Blockage::probability(LinkType t, double r) const {
  if (t == LinkType::LOS) return los(r);
  // 1 - exp(-r/beta) cancels badly near the origin.
  if (kind_ == Kind::Exponential && r >= 0.0) return -std::expm1(-r / beta_);
  return 1.0 - los(r);
}

double Blockage::area(LinkType t, double r) const {
  if (r < 0.0 || std::isnan(r)) throw std::domain_error("blockage area needs r >= 0");
  const double disk = kPi * r * r;
  double los_area = 0.0;
  switch (kind_) {
    case Kind::Exponential: {
      const double x = r / beta_;
      if (x < 0.05) {
        // Both areas cancel badly near the origin; use their series.
        const double nlos = x * x * x *
                            (1.0 / 3 + x * (-1.0 / 8 + x * (1.0 / 30 + x * (-1.0 / 144 +
                            x * (1.0 / 840 + x * (-1.0 / 5760))))));
        const double nlos_area = kTwoPi * beta_ * beta_ * nlos;
        return t == LinkType::LOS ? disk - nlos_area : nlos_area;
      }
      los_area = kTwoPi * beta_ * beta_ * (-std::expm1(-x) - x * std::exp(-x));
      break;
    }
    case Kind::None:
      los_area = disk;
      break;
    case Kind::Custom: {
      const auto res = quad::gauss_kronrod(
          [this](double u) { return kTwoPi * custom_(u) * u; }, 0.0, r,
          quad::Tolerance{1e-12, 1e-10, 2000}, 4);
      los_area = quad::checked(res, "blockage area");
      break;
    }
  }
  return t == LinkType::LOS ? los_area : disk - los_area;
}

void ChannelModel::validate() const {
  for (LinkType t : kLinkTypes) {
    if (!(alpha_of(t) > 2.0)) {
      throw std::invalid_argument(std::string("channel: alpha_") + to_string(t) + " must exceed 2");
    }
    if (!(gain_of(t) > 0.0)) {
      throw std::invalid_argument(std::string("channel: gain C_") + to_string(t) +
                                  " must be positive");
    }
  }
}

double los_probability(const ChannelModel& ch, double r) { return ch.blockage.los(r); }

double pathloss(const ChannelModel& ch, LinkType t, double r) {
  if (!(r > 0.0)) throw std::domain_error("pathloss is singular at r = 0");
  return ch.gain_of(t) * std::pow(r, -ch.alpha_of(t));
}

AntennaPattern AntennaPattern::sectored(double main_gain, double beamwidth) {
  AntennaPattern p;
  p.main_gain = main_gain;
  p.beamwidth = beamwidth;
  const double w = beamwidth / kTwoPi;
  p.side_gain = w < 1.0 ? (1.0 - main_gain * w) / (1.0 - w) : main_gain;
  if (p.side_gain < 0.0 && p.side_gain > -1e-12) p.side_gain = 0.0;
  p.validate();
  return p;
}

AntennaPattern AntennaPattern::omni() { return AntennaPattern{1.0, 1.0, kTwoPi}; }

double AntennaPattern::main_weight() const { return beamwidth / kTwoPi; }

void AntennaPattern::validate() const {
  if (!(beamwidth > 0.0) || beamwidth > kTwoPi * (1.0 + 1e-15)) {
    throw std::invalid_argument("antenna: beamwidth must lie in (0, 2*pi]");
  }
  if (!(main_gain >= side_gain) || !(side_gain >= 0.0)) {
    throw std::invalid_argument("antenna: need main_gain >= side_gain >= 0");
  }
  const double total = main_gain * beamwidth + side_gain * (kTwoPi - beamwidth);
  if (std::abs(total - kTwoPi) > 1e-12 * kTwoPi) {
    throw std::invalid_argument("antenna: power conservation G1*theta + G2*(2pi-theta) = 2pi violated");
  }
}

double antenna_gain(const AntennaPattern& pattern, double theta) {
  if (!std::isfinite(theta)) throw std::domain_error("antenna angle must be finite");
  double wrapped = std::remainder(theta, kTwoPi);
  return std::abs(wrapped) <= 0.5 * pattern.beamwidth ? pattern.main_gain : pattern.side_gain;
}

AntennaPattern ula_pattern(int n_antennas, double kappa) {
  if (n_antennas < 1) throw std::invalid_argument("ula: need at least one antenna");
  const double n = n_antennas;
  if (!(kappa > 0.0) || kappa > 1.0) throw std::invalid_argument("ula: kappa must lie in (0, 1]");
  if (n_antennas == 1) {
    if (kappa != 1.0) throw std::invalid_argument("ula: a single element needs kappa = 1");
    return AntennaPattern::omni();
  }
  AntennaPattern p;
  p.main_gain = n;
  p.beamwidth = kTwoPi * kappa / n;
  p.side_gain = (1.0 - kappa) * n / (n - kappa);
  p.validate();
  return p;
}

void OperatorConfig::validate(const char* who) const {
  const std::string name(who);
  if (!(bs_density > 0.0)) throw std::invalid_argument(name + ": bs_density must be positive");
  if (!(user_density > 0.0)) throw std::invalid_argument(name + ": user_density must be positive");
  if (!(noise_power >= 0.0)) throw std::invalid_argument(name + ": noise_power must be >= 0");
  if (const auto* fp = std::get_if<FixedPower>(&power)) {
    if (!(fp->watts > 0.0)) throw std::invalid_argument(name + ": fixed power must be positive");
  } else if (!(std::get<InterferenceCap>(power).xi > 0.0)) {
    throw std::invalid_argument(name + ": interference cap xi must be positive");
  }
  try {
    antenna.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(name + ": " + e.what());
  }
}

double exclusion_radius(const ChannelModel& ch, LinkType home, LinkType other, double r) {
  if (r < 0.0 || std::isnan(r)) throw std::domain_error("exclusion radius needs r >= 0");
  if (home == other) return r;
  const double at = ch.alpha_of(other);
  return std::pow(ch.gain_of(other) / ch.gain_of(home), 1.0 / at) *
         std::pow(r, ch.alpha_of(home) / at);
}

double normalized_power(const ChannelModel& ch, double r, LinkType home) {
  if (!(r > 0.0)) throw std::domain_error("normalized power is singular at r = 0");
  return std::pow(r, ch.alpha_of(home)) / ch.gain_of(home);
}

double secondary_tx_power(const ChannelModel& ch, double xi, double r, LinkType home) {
  if (!(xi > 0.0)) throw std::domain_error("interference cap xi must be positive");
  return xi * normalized_power(ch, r, home);
}

HomeLinkDistribution::HomeLinkDistribution(ChannelModel channel, double primary_user_density)
    : channel_(std::move(channel)), lambda_(primary_user_density) {
  channel_.validate();
  if (!(lambda_ > 0.0)) throw std::invalid_argument("home link: primary user density must be positive");
}

double HomeLinkDistribution::length_scale() const { return 1.0 / std::sqrt(kPi * lambda_); }

double HomeLinkDistribution::pdf(double r, LinkType t) const {
  if (r < 0.0 || std::isnan(r)) throw std::domain_error("home link pdf needs r >= 0");
  if (r == 0.0) return 0.0;
  const Blockage& b = channel_.blockage;
  const LinkType other = complement(t);
  const double void_area = b.area(t, r) + b.area(other, exclusion_radius(channel_, t, other, r));
  return kTwoPi * lambda_ * b.probability(t, r) * r * std::exp(-lambda_ * void_area);
}

double HomeLinkDistribution::cdf(double r, LinkType t, const quad::Tolerance& tol) const {
  if (r <= 0.0) return 0.0;
  const auto res = quad::gauss_kronrod([&](double x) { return pdf(x, t); }, 0.0, r, tol, 4);
  return quad::checked(res, "home link cdf");
}

double HomeLinkDistribution::expect(const std::function<double(double, LinkType)>& g,
                                    const quad::Tolerance& tol) const {
  quad::SemiInfinite shape;
  shape.scale = length_scale();
  shape.lower_decades = 8.0;
  shape.upper_decades = 3.0;
  double total = 0.0;
  for (LinkType t : kLinkTypes) {
    const auto res = quad::semi_infinite(
        [&](double r) {
          const double p = pdf(r, t);
          return p == 0.0 ? 0.0 : g(r, t) * p;
        },
        0.0, shape, tol);
    total += quad::checked(res, "home link expectation");
  }
  return total;
}

double home_link_pdf(const HomeLinkDistribution& dist, double r, LinkType t) {
  return dist.pdf(r, t);
}

double normalized_power_moments(const HomeLinkDistribution& dist,
                                const std::function<double(double)>& g,
                                const quad::Tolerance& tol) {
  const ChannelModel& ch = dist.channel();
  return dist.expect([&](double r, LinkType t) { return g(normalized_power(ch, r, t)); }, tol);
}

}  // namespace mmshare
