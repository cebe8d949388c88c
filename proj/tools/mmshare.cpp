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

// mmshare <mode> --config <file> --out <dir> [--seed N] [--threads N] [--format csv|json]
//
// Exit status: 0 on success, 2 when validate mode finds a gap above its
// tolerance, 1 on any error. MMSHARE_THREADS sets the default thread count.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mmshare/config.hpp"
#include "mmshare/harness.hpp"

namespace {

std::optional<int> env_threads() {
  const char* v = std::getenv("MMSHARE_THREADS");
  if (v == nullptr || *v == '\0') return std::nullopt;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 0 || n > 4096) {
    throw mmshare::ConfigError(std::string("MMSHARE_THREADS: expected a thread count, got '") + v + "'");
  }
  return static_cast<int>(n);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coverage, rate and licensing economics of mmWave spectrum sharing"};
  app.set_version_flag("--version", mmshare::kVersion);

  std::string mode;
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> format;

  app.add_option("mode", mode, "mc | analytic | validate | sweep-xi | compare-modes | sweep-density | sweep-beamwidth")
      ->required()
      ->check(CLI::IsMember(
          {"mc", "analytic", "validate", "sweep-xi", "compare-modes", "sweep-density", "sweep-beamwidth"}));
  app.add_option("--config", config_path, "YAML run configuration")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory")->required();
  app.add_option("--seed", seed, "overrides the config seed");
  app.add_option("--threads", threads, "0 = all cores; overrides MMSHARE_THREADS")->check(CLI::NonNegativeNumber);
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    mmshare::RunConfig cfg = mmshare::load_config(config_path);
    cfg.mode = mmshare::parse_mode(mode);
    if (seed) cfg.scenario.seed = *seed;
    if (threads) {
      cfg.threads = *threads;
    } else if (const auto env = env_threads()) {
      cfg.threads = *env;
    }
    if (format) cfg.format = mmshare::parse_format(*format);
    cfg.validate();
    mmshare::check_output_dir(out_dir);

    const mmshare::ResultRecord rec = mmshare::run(cfg);
    const auto files = mmshare::emit(rec, out_dir, cfg.format);
    std::cerr << "mmshare " << mode << ": " << files.size() << " files in " << out_dir << " (" << rec.duration_s
              << " s, config " << rec.config_hash << ")\n";
    if (rec.status == 2) {
      for (const auto& row : rec.table("gaps").rows) {
        if (std::get<long long>(row.back()) == 0) {
          std::cerr << "gap above tolerance: " << std::get<std::string>(row[1]) << " at lambda_ST "
                    << std::get<double>(row[0]) << "/km2, max gap " << std::get<double>(row[2]) << "\n";
        }
      }
    }
    return rec.status;
  } catch (const std::exception& e) {
    std::cerr << "mmshare: " << e.what() << "\n";
    return 1;
  }
}
