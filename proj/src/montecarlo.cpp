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

#include "mmshare/montecarlo.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>

#include "mmshare/units.hpp"

namespace mmshare::mc {

namespace {

constexpr double kRingWidth = 25.0;
constexpr std::uint32_t kMaxRings = 1u << 12;
constexpr std::uint32_t kMaxPerRing = 1u << 20;
constexpr std::uint32_t kMaxAttempts = 1000;

std::uint32_t stream_word(Tag tag, std::uint32_t attempt) {
  return (static_cast<std::uint32_t>(tag) << 24) | (attempt & 0x00ffffffu);
}

std::uint32_t realization_word(std::uint64_t realization) {
  if (realization > 0xffffffffull) throw std::out_of_range("realization index exceeds 32 bits");
  return static_cast<std::uint32_t>(realization);
}

// C_t d^{-alpha_t} without the domain check; d = 0 gives +inf.
double raw_gain(const ChannelModel& ch, LinkType t, double d) {
  return ch.gain_of(t) * std::pow(d, -ch.alpha_of(t));
}

double gain_bound(const ChannelModel& ch, double d) {
  return std::max(raw_gain(ch, LinkType::LOS, d), raw_gain(ch, LinkType::NLOS, d));
}

// (gain, distance, id) ordering for association: higher gain wins, then
// the nearer point, then the lower id.
bool beats(double gain, double dist, std::int64_t id, double best_gain, double best_dist,
           std::int64_t best_id) {
  if (gain != best_gain) return gain > best_gain;
  if (dist != best_dist) return dist < best_dist;
  return id < best_id;
}

std::vector<LinkDraw> draw_links(const Scenario& s, const rng::Key& key, Tag tag,
                                 const Realization& r, const std::vector<Point>& bss,
                                 std::uint32_t user_id) {
  std::vector<LinkDraw> out;
  out.reserve(bss.size());
  for (const Point& p : bss) {
    out.push_back(draw_link(key, tag, r.attempt, r.index, p.id, user_id, p.norm(),
                            s.channel.blockage));
  }
  return out;
}

struct Tagged {
  std::size_t index = 0;
  double gain = -1.0;
};

// Strongest average received power at the origin among `bss`, where
// `power(i)` is the transmit power of BS i.
template <class PowerFn>
Tagged strongest(const ChannelModel& ch, const std::vector<Point>& bss,
                 const std::vector<LinkDraw>& links, PowerFn power) {
  Tagged best;
  double best_dist = std::numeric_limits<double>::infinity();
  std::int64_t best_id = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < bss.size(); ++i) {
    const double d = bss[i].norm();
    const double g = power(i) * raw_gain(ch, links[i].type, d);
    if (beats(g, d, bss[i].id, best.gain, best_dist, best_id)) {
      best = {i, g};
      best_dist = d;
      best_id = bss[i].id;
    }
  }
  return best;
}

double secondary_power(const Scenario& s, const std::vector<HomeLink>& homes, std::size_t i) {
  if (const auto* fp = std::get_if<FixedPower>(&s.secondary.power)) return fp->watts;
  return homes[i].power;
}

}  // namespace

double Point::norm() const { return std::hypot(x, y); }

LinkDraw draw_link(const rng::Key& key, Tag tag, std::uint32_t attempt, std::uint64_t realization,
                   std::uint32_t bs_id, std::uint32_t user_id, double distance,
                   const Blockage& blockage) {
  const rng::Counter ctr = {stream_word(tag, attempt), realization_word(realization), bs_id, user_id};
  const rng::Counter bits = rng::philox4x32(ctr, key);
  LinkDraw d;
  d.type = rng::open01(bits[0]) < blockage.los(distance) ? LinkType::LOS : LinkType::NLOS;
  d.fading = -std::log(rng::open01(bits[1]));
  d.angle = kTwoPi * rng::open01(bits[2]) - kPi;
  return d;
}

std::vector<Point> sample_ppp(const rng::Key& key, Tag tag, std::uint32_t attempt,
                              std::uint64_t realization, double density, double radius) {
  std::vector<Point> pts;
  const auto rings = static_cast<std::uint32_t>(std::ceil(radius / kRingWidth));
  if (rings > kMaxRings) throw std::out_of_range("sample window too large for the ring layout");
  const std::uint32_t w0 = stream_word(tag, attempt);
  const std::uint32_t w1 = realization_word(realization);
  for (std::uint32_t k = 0; k < rings; ++k) {
    const double r_in = kRingWidth * k;
    const double r_out = r_in + kRingWidth;
    const double span = r_out * r_out - r_in * r_in;
    rng::Stream stream(key, w0, w1, k);
    std::poisson_distribution<std::uint32_t> count_dist(density * kPi * span);
    const std::uint32_t count = count_dist(stream);
    if (count >= kMaxPerRing) throw std::out_of_range("too many points in one ring");
    for (std::uint32_t j = 0; j < count; ++j) {
      const double rr = std::sqrt(r_in * r_in + stream.uniform() * span);
      const double phi = kTwoPi * stream.uniform();
      if (rr > radius) continue;
      pts.push_back(Point{rr * std::cos(phi), rr * std::sin(phi), (k << 20) | j});
    }
  }
  return pts;
}

HomeLink associate_home(const ChannelModel& ch, const rng::Key& key, std::uint32_t attempt,
                        std::uint64_t realization, const Point& bs,
                        const std::vector<Point>& users) {
  if (users.empty()) throw std::logic_error("association needs at least one primary user");
  std::vector<std::pair<double, std::int32_t>> heap;
  heap.reserve(users.size());
  for (std::size_t j = 0; j < users.size(); ++j) {
    const double dx = users[j].x - bs.x;
    const double dy = users[j].y - bs.y;
    heap.emplace_back(dx * dx + dy * dy, static_cast<std::int32_t>(j));
  }
  const auto cmp = [](const auto& a, const auto& b) { return a > b; };
  std::make_heap(heap.begin(), heap.end(), cmp);

  HomeLink best;
  double best_gain = -1.0;
  std::int64_t best_id = std::numeric_limits<std::int64_t>::max();
  best.distance = std::numeric_limits<double>::infinity();
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), cmp);
    const auto [d2, j] = heap.back();
    heap.pop_back();
    const double d = std::sqrt(d2);
    if (best_gain > 0.0 && gain_bound(ch, d) < best_gain) break;
    const LinkDraw link =
        draw_link(key, Tag::HomeLink, attempt, realization, bs.id, users[j].id, d, ch.blockage);
    const double g = raw_gain(ch, link.type, d);
    if (beats(g, d, users[j].id, best_gain, best.distance, best_id)) {
      best_gain = g;
      best_id = users[j].id;
      best.user = j;
      best.distance = d;
      best.type = link.type;
    }
  }
  return best;
}

std::optional<Realization> sample_realization(const Scenario& s, std::uint64_t index,
                                              std::uint32_t attempt) {
  const rng::Key key = rng::key_from_seed(s.seed);
  Realization r;
  r.index = index;
  r.attempt = attempt;
  const double w = s.window_radius;
  r.primary_bs = sample_ppp(key, Tag::PrimaryBs, attempt, index, s.primary.bs_density, w);
  r.secondary_bs = sample_ppp(key, Tag::SecondaryBs, attempt, index, s.secondary.bs_density, w);
  r.primary_users = sample_ppp(key, Tag::PrimaryUsers, attempt, index, s.primary.user_density,
                               w + s.guard_radius);
  r.secondary_users =
      sample_ppp(key, Tag::SecondaryUsers, attempt, index, s.secondary.user_density, w);
  if (r.primary_bs.empty() || r.secondary_bs.empty()) return std::nullopt;
  if (s.restricted() && r.primary_users.empty()) return std::nullopt;

  r.primary_to_pu0 = draw_links(s, key, Tag::PrimaryToPrimaryUser, r, r.primary_bs, kProbeId);
  r.secondary_to_pu0 = draw_links(s, key, Tag::HomeLink, r, r.secondary_bs, kProbeId);
  r.primary_to_su0 = draw_links(s, key, Tag::PrimaryToSecondaryUser, r, r.primary_bs, kProbeId);
  r.secondary_to_su0 = draw_links(s, key, Tag::SecondaryToSecondaryUser, r, r.secondary_bs, kProbeId);
  return r;
}

void associate_and_power(Realization& r, const Scenario& s) {
  r.home.clear();
  r.home_probe.clear();
  if (!s.restricted()) return;
  const rng::Key key = rng::key_from_seed(s.seed);
  const double xi = s.xi();
  r.home.reserve(r.secondary_bs.size());
  r.home_probe.reserve(r.secondary_bs.size());
  for (std::size_t i = 0; i < r.secondary_bs.size(); ++i) {
    HomeLink h = associate_home(s.channel, key, r.attempt, r.index, r.secondary_bs[i], r.primary_users);
    h.power = secondary_tx_power(s.channel, xi, h.distance, h.type);
    r.home.push_back(h);

    // The typical primary user competes with the PPP users; its link is the
    // same draw that later carries this BS's interference to it.
    const double d0 = r.secondary_bs[i].norm();
    const LinkType t0 = r.secondary_to_pu0[i].type;
    const double g0 = raw_gain(s.channel, t0, d0);
    const double gh = raw_gain(s.channel, h.type, h.distance);
    const std::int64_t home_id = r.primary_users[static_cast<std::size_t>(h.user)].id;
    if (beats(g0, d0, -1, gh, h.distance, home_id)) {
      HomeLink p{kProbeUser, d0, t0, secondary_tx_power(s.channel, xi, d0, t0)};
      r.home_probe.push_back(p);
    } else {
      r.home_probe.push_back(h);
    }
  }
}

Realization sample_accepted(const Scenario& s, std::uint64_t index, std::size_t* rejections) {
  for (std::uint32_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    auto r = sample_realization(s, index, attempt);
    if (r) {
      associate_and_power(*r, s);
      return std::move(*r);
    }
    if (rejections) ++*rejections;
  }
  throw std::runtime_error("realization rejected too often; window too small for the densities");
}

double typical_user_sinr(const Realization& r, const Scenario& s, Operator which) {
  const ChannelModel& ch = s.channel;
  const double pp = s.primary_power();
  const bool primary = which == Operator::Primary;
  const auto& p_links = primary ? r.primary_to_pu0 : r.primary_to_su0;
  const auto& s_links = primary ? r.secondary_to_pu0 : r.secondary_to_su0;
  const auto& homes = primary ? r.home_probe : r.home;

  auto sec_power = [&](std::size_t i) { return secondary_power(s, homes, i); };
  auto pri_power = [&](std::size_t) { return pp; };

  Tagged tagged;
  double signal = 0.0;
  if (primary) {
    tagged = strongest(ch, r.primary_bs, p_links, pri_power);
    signal = s.primary.antenna.main_gain * p_links[tagged.index].fading * tagged.gain;
  } else {
    tagged = strongest(ch, r.secondary_bs, s_links, sec_power);
    signal = s.secondary.antenna.main_gain * s_links[tagged.index].fading * tagged.gain;
  }

  double interference = primary ? s.primary.noise_power : s.secondary.noise_power;
  for (std::size_t i = 0; i < r.primary_bs.size(); ++i) {
    if (primary && i == tagged.index) continue;
    const LinkDraw& l = p_links[i];
    interference += antenna_gain(s.primary.antenna, l.angle) * l.fading * pp *
                    raw_gain(ch, l.type, r.primary_bs[i].norm());
  }
  for (std::size_t i = 0; i < r.secondary_bs.size(); ++i) {
    if (!primary && i == tagged.index) continue;
    const LinkDraw& l = s_links[i];
    interference += antenna_gain(s.secondary.antenna, l.angle) * l.fading * sec_power(i) *
                    raw_gain(ch, l.type, r.secondary_bs[i].norm());
  }
  if (interference == 0.0) return std::numeric_limits<double>::infinity();
  return signal / interference;
}

namespace {

struct One {
  double primary = 0.0;
  double secondary = 0.0;
  std::size_t rejected = 0;
};

One simulate_one(const Scenario& s, std::uint64_t index) {
  One o;
  const Realization r = sample_accepted(s, index, &o.rejected);
  o.primary = typical_user_sinr(r, s, Operator::Primary);
  o.secondary = typical_user_sinr(r, s, Operator::Secondary);
  return o;
}

}  // namespace

Samples simulate_serial(const Scenario& s) {
  s.validate();
  Samples out;
  out.sinr_primary.resize(s.n_realizations);
  out.sinr_secondary.resize(s.n_realizations);
  for (std::size_t i = 0; i < s.n_realizations; ++i) {
    const One o = simulate_one(s, i);
    out.sinr_primary[i] = o.primary;
    out.sinr_secondary[i] = o.secondary;
    out.rejected += o.rejected;
  }
  return out;
}

Samples simulate(const Scenario& s, int threads) {
  s.validate();
  Samples out;
  const auto n = static_cast<std::int64_t>(s.n_realizations);
  out.sinr_primary.resize(s.n_realizations);
  out.sinr_secondary.resize(s.n_realizations);
  std::size_t rejected = 0;
  std::exception_ptr failure;
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(nt) reduction(+ : rejected)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      const One o = simulate_one(s, static_cast<std::uint64_t>(i));
      out.sinr_primary[static_cast<std::size_t>(i)] = o.primary;
      out.sinr_secondary[static_cast<std::size_t>(i)] = o.secondary;
      rejected += o.rejected;
    } catch (...) {
#pragma omp critical(mmshare_mc_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  out.rejected = rejected;
  return out;
}

CoverageCurve empirical_coverage(const std::vector<double>& sinr,
                                 const std::vector<double>& thresholds, std::uint64_t seed) {
  if (sinr.empty()) throw std::invalid_argument("empirical coverage needs samples");
  if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
    throw std::invalid_argument("empirical coverage: thresholds must ascend");
  }
  std::vector<double> sorted = sinr;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  CoverageCurve c;
  c.thresholds = thresholds;
  c.provenance = MonteCarloProvenance{sorted.size(), seed};
  for (double tau : thresholds) {
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), tau);
    const double p = static_cast<double>(above) / n;
    c.values.push_back(p);
    c.ci_halfwidth.push_back(1.959963984540054 * std::sqrt(p * (1.0 - p) / n));
  }
  return c;
}

double empirical_quantile(std::vector<double> sinr, double q) {
  if (sinr.empty()) throw std::invalid_argument("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("quantile level must lie in [0, 1]");
  std::sort(sinr.begin(), sinr.end());
  const double pos = q * static_cast<double>(sinr.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sinr.size() - 1);
  if (std::isinf(sinr[hi]) || lo == hi) return pos == static_cast<double>(lo) ? sinr[lo] : sinr[hi];
  return sinr[lo] + (pos - static_cast<double>(lo)) * (sinr[hi] - sinr[lo]);
}

std::vector<HomeSample> sample_home_links(const ChannelModel& ch, double user_density,
                                          double radius, std::size_t n, std::uint64_t seed,
                                          int threads) {
  std::vector<HomeSample> out(n);
  const rng::Key key = rng::key_from_seed(seed);
  std::exception_ptr failure;
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 64) num_threads(nt)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    try {
      const auto idx = static_cast<std::uint64_t>(i);
      for (std::uint32_t attempt = 0;; ++attempt) {
        if (attempt == kMaxAttempts) throw std::runtime_error("home-link disk keeps coming up empty");
        const auto users = sample_ppp(key, Tag::PrimaryUsers, attempt, idx, user_density, radius);
        if (users.empty()) continue;
        const HomeLink h = associate_home(ch, key, attempt, idx, Point{0.0, 0.0, 0u}, users);
        out[static_cast<std::size_t>(i)] = HomeSample{h.distance, h.type};
        break;
      }
    } catch (...) {
#pragma omp critical(mmshare_home_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace mmshare::mc
