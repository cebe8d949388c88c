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
#include <stdexcept>
#include <string>
#include <vector>

#include "mmshare/economics.hpp"
#include "mmshare/scenario.hpp"

namespace mmshare {

enum class Mode { MonteCarlo, Analytic, Validate, SweepXi, CompareModes, SweepDensity, SweepBeamwidth };
enum class Format { Csv, Json };

/// "mc", "analytic", "validate", "sweep-xi", "compare-modes", "sweep-density",
/// "sweep-beamwidth".
Mode parse_mode(const std::string& name);
std::string to_string(Mode m);
Format parse_format(const std::string& name);
std::string to_string(Format f);

/// Raised for unreadable files, YAML syntax errors, unknown keys, bad units
/// and violated invariants. what() carries the field path and, when known,
/// the line.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evenly spaced in dB, both ends included.
struct DbGrid {
  double lo_db = -20.0;
  double hi_db = 40.0;
  std::size_t points = 61;

  std::vector<double> linear() const;
};

struct ValidateSettings {
  /// Secondary BS densities to run, per m^2. Empty means the scenario's own.
  std::vector<double> secondary_densities;
  /// Largest allowed |P_mc - P_analytic| per operator.
  double tolerance = 0.02;
};

struct CompareSettings {
  double lambda_a = 60e-6;
  std::vector<double> lambda_b = {30e-6, 60e-6, 90e-6};
};

struct BeamSettings {
  std::vector<int> elements = {1, 2, 4, 8, 16, 32, 64};
  double kappa = 0.9;
  bool both_operators = false;
};

struct RunConfig {
  Mode mode = Mode::Analytic;
  /// Window and guard radii of zero are filled per run.
  Scenario scenario;
  LinearPricing::Constants pricing;
  RateSettings rate;
  QuadratureSpec quadrature;
  /// Hz. Recorded with the run; the channel model does not use it.
  double carrier_frequency = 28e9;
  DbGrid thresholds;
  DbGrid xi_grid{-130.0, -90.0, 21};
  ValidateSettings validate_run;
  CompareSettings compare;
  /// Secondary BS densities for sweep-density, per m^2.
  std::vector<double> densities = {15e-6, 30e-6, 60e-6, 120e-6, 240e-6};
  BeamSettings beam;
  /// 0 means the OpenMP default.
  int threads = 0;
  Format format = Format::Csv;

  /// Throws ConfigError naming the first violated invariant, including the
  /// fields the chosen mode needs.
  void validate() const;
};

/// Default run: the reference deployment of baseline_scenario().
RunConfig default_run_config();

RunConfig parse_config(const std::string& yaml_text, const std::string& source = "<string>");
RunConfig load_config(const std::string& path);

/// YAML with every field present, SI units, doubles at 17 significant
/// digits. Parsing it back gives the same RunConfig.
std::string canonical_config(const RunConfig& c);

/// FNV-1a 64 of the canonical text with the fields that cannot change
/// results (threads, format) and the seed left out, as 16 hex digits.
std::string config_hash(const RunConfig& c);

}  // namespace mmshare
