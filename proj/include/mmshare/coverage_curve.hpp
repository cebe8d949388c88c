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
#include <string>
#include <variant>
#include <vector>

namespace mmshare {

struct MonteCarloProvenance {
  std::size_t realizations = 0;
  std::uint64_t seed = 0;
};
struct AnalyticProvenance {
  double tolerance = 0.0;
};
using Provenance = std::variant<MonteCarloProvenance, AnalyticProvenance>;

/// P[SINR > tau] (or rate coverage) on a grid of linear thresholds.
struct CoverageCurve {
  std::vector<double> thresholds;
  std::vector<double> values;
  /// 95% normal-approximation half widths; zero for analytic curves.
  std::vector<double> ci_halfwidth;
  Provenance provenance = AnalyticProvenance{};

  std::size_t size() const { return thresholds.size(); }
  /// Throws std::invalid_argument if lengths differ, values leave [0, 1],
  /// or the curve increases anywhere beyond `slack`.
  void validate(double slack = 0.0) const;
  std::string provenance_label() const;
};

/// Log-spaced linear thresholds for lo_db..hi_db inclusive.
std::vector<double> db_grid(double lo_db, double hi_db, std::size_t points);

}  // namespace mmshare
