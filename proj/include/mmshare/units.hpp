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

#include <cmath>
#include <numbers>

namespace mmshare {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Power ratio in dB to linear.
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }
inline double to_db(double linear) { return 10.0 * std::log10(linear); }

/// dBm to watts.
inline double from_dbm(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

/// Densities are carried per square meter internally.
inline constexpr double per_km2(double value) { return value / 1e6; }
inline constexpr double to_per_km2(double per_m2) { return per_m2 * 1e6; }

}  // namespace mmshare
