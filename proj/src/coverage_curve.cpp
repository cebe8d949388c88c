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

#include "mmshare/coverage_curve.hpp"

#include <stdexcept>

#include "mmshare/units.hpp"

namespace mmshare {

void CoverageCurve::validate(double slack) const {
  if (values.size() != thresholds.size() || ci_halfwidth.size() != thresholds.size()) {
    throw std::invalid_argument("coverage curve: column lengths differ");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0 && values[i] <= 1.0)) {
      throw std::invalid_argument("coverage curve: value outside [0, 1]");
    }
    if (!(ci_halfwidth[i] >= 0.0)) throw std::invalid_argument("coverage curve: negative CI");
    if (i > 0 && thresholds[i] < thresholds[i - 1]) {
      throw std::invalid_argument("coverage curve: thresholds not ascending");
    }
    if (i > 0 && values[i] > values[i - 1] + slack) {
      throw std::invalid_argument("coverage curve: increases with threshold");
    }
  }
}

std::string CoverageCurve::provenance_label() const {
  if (const auto* mc = std::get_if<MonteCarloProvenance>(&provenance)) {
    return "mc(n=" + std::to_string(mc->realizations) + ",seed=" + std::to_string(mc->seed) + ")";
  }
  return "analytic";
}

std::vector<double> db_grid(double lo_db, double hi_db, std::size_t points) {
  if (points < 2) throw std::invalid_argument("db_grid: need at least two points");
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double db = lo_db + (hi_db - lo_db) * static_cast<double>(i) / static_cast<double>(points - 1);
    out[i] = from_db(db);
  }
  return out;
}

}  // namespace mmshare
