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
#include <optional>
#include <vector>

#include "mmshare/channel.hpp"
#include "mmshare/coverage_curve.hpp"
#include "mmshare/rng.hpp"
#include "mmshare/scenario.hpp"

namespace mmshare::mc {

enum class Operator { Primary, Secondary };

struct Point {
  double x = 0.0;
  double y = 0.0;
  /// ring << 20 | index within ring; stable when the window grows.
  std::uint32_t id = 0;
  double norm() const;
};

/// Link randomness between one BS and one user: blockage state, unit-mean
/// exponential fading and the direction of the BS beam relative to the user.
struct LinkDraw {
  LinkType type = LinkType::LOS;
  double fading = 1.0;
  double angle = 0.0;
};

inline constexpr std::int32_t kProbeUser = -1;
inline constexpr std::uint32_t kProbeId = 0xffffffffu;

struct HomeLink {
  /// Index into primary_users, or kProbeUser for the typical primary user.
  std::int32_t user = 0;
  double distance = 0.0;
  LinkType type = LinkType::LOS;
  double power = 0.0;
};

/// Substream tags. Each realization owns every counter with its index.
enum class Tag : std::uint32_t {
  PrimaryBs = 1,
  SecondaryBs = 2,
  PrimaryUsers = 3,
  SecondaryUsers = 4,
  HomeLink = 5,
  PrimaryToPrimaryUser = 6,
  PrimaryToSecondaryUser = 7,
  SecondaryToSecondaryUser = 8,
};

struct Realization {
  std::uint64_t index = 0;
  std::uint32_t attempt = 0;
  std::vector<Point> primary_bs;
  std::vector<Point> secondary_bs;
  std::vector<Point> primary_users;
  std::vector<Point> secondary_users;
  /// Per secondary BS, ignoring the typical primary user. This is the view
  /// of the typical secondary user.
  std::vector<HomeLink> home;
  /// Per secondary BS with the typical primary user at the origin competing
  /// for association. Empty in uncoordinated mode.
  std::vector<HomeLink> home_probe;
  /// Links towards the typical primary user (PU0) and secondary user (SU0).
  std::vector<LinkDraw> primary_to_pu0;
  std::vector<LinkDraw> secondary_to_pu0;
  std::vector<LinkDraw> primary_to_su0;
  std::vector<LinkDraw> secondary_to_su0;
};

/// Draws the link between BS `bs_id` and user `user_id` at distance d.
LinkDraw draw_link(const rng::Key& key, Tag tag, std::uint32_t attempt, std::uint64_t realization,
                   std::uint32_t bs_id, std::uint32_t user_id, double distance,
                   const Blockage& blockage);

/// PPP of the given density in a disk; rings of fixed width are sampled
/// from their own substreams so growing the radius leaves inner points
/// untouched.
std::vector<Point> sample_ppp(const rng::Key& key, Tag tag, std::uint32_t attempt,
                              std::uint64_t realization, double density, double radius);

/// Highest-average-power primary user for a BS at `bs`. Candidates are
/// visited by distance and skipped once even a LOS link cannot win.
HomeLink associate_home(const ChannelModel& ch, const rng::Key& key, std::uint32_t attempt,
                        std::uint64_t realization, const Point& bs, const std::vector<Point>& users);

/// Point sets and link draws; returns nullopt when the draw must be
/// rejected (a BS tier or the primary users are empty).
std::optional<Realization> sample_realization(const Scenario& s, std::uint64_t index,
                                              std::uint32_t attempt);
/// Home users and transmit powers of every secondary BS.
void associate_and_power(Realization& r, const Scenario& s);
/// Resamples with increasing attempt numbers until accepted.
Realization sample_accepted(const Scenario& s, std::uint64_t index, std::size_t* rejections = nullptr);

/// +inf when both noise and interference vanish.
double typical_user_sinr(const Realization& r, const Scenario& s, Operator which);

struct Samples {
  std::vector<double> sinr_primary;
  std::vector<double> sinr_secondary;
  std::size_t rejected = 0;
};

/// Plain loop over realizations. Kept as the reference for the parallel run.
Samples simulate_serial(const Scenario& s);
/// OpenMP over realizations; bit-identical to simulate_serial for any
/// thread count. threads <= 0 uses the OpenMP default.
Samples simulate(const Scenario& s, int threads);

CoverageCurve empirical_coverage(const std::vector<double>& sinr,
                                 const std::vector<double>& thresholds, std::uint64_t seed);
/// Sample quantile by linear interpolation of the order statistics.
double empirical_quantile(std::vector<double> sinr, double q);

struct HomeSample {
  double distance = 0.0;
  LinkType type = LinkType::LOS;
};

/// Home links of a secondary BS placed at the origin, one per independent
/// primary-user PPP in a disk of `radius`.
std::vector<HomeSample> sample_home_links(const ChannelModel& ch, double user_density,
                                          double radius, std::size_t n, std::uint64_t seed,
                                          int threads);

}  // namespace mmshare::mc
