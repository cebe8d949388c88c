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

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mmshare/config.hpp"

namespace mmshare {

inline constexpr const char* kVersion = "0.1.0";

using Cell = std::variant<double, long long, std::string>;

/// One emitted table. Column names ending in _db hold dB values, all other
/// numbers are linear SI.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Throws std::invalid_argument if the row width does not match.
  void add(std::vector<Cell> row);
};

struct ResultRecord {
  Mode mode = Mode::Analytic;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::string canonical_config;
  /// Named tolerances and confidence levels behind the numbers.
  std::vector<std::pair<std::string, double>> tolerances;
  std::vector<std::pair<std::string, std::string>> engines;
  int threads = 0;
  double duration_s = 0.0;
  std::vector<Table> tables;
  /// 0, or 2 when validate mode finds a gap above its tolerance.
  int status = 0;
  std::vector<std::string> notes;

  const Table& table(const std::string& name) const;
};

/// Runs the configured mode. Engine failures come back as
/// std::runtime_error prefixed with the mode and scenario point.
ResultRecord run(const RunConfig& c);

/// RFC 4180 text, numbers at 17 significant digits.
std::string to_csv(const Table& t);
/// Fields that parse fully as numbers come back as doubles.
Table read_csv(const std::string& text, const std::string& name);

/// {"columns": [...], "rows": [[...]]} per table, keyed by table name.
std::string payload_json(const ResultRecord& r);
/// Everything except the tables.
std::string metadata_json(const ResultRecord& r);

/// csv: one file per table plus metadata.json; json: result.json holding
/// metadata and tables. Both also write the canonical config.yaml. Creates
/// `dir` if needed; I/O failures throw std::runtime_error. Returns the
/// written paths.
std::vector<std::string> emit(const ResultRecord& r, const std::string& dir, Format format);

/// Creates `dir` and checks that a file can be written in it.
void check_output_dir(const std::string& dir);

}  // namespace mmshare
