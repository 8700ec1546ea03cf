// Copyright 2026 The psme Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "psme/config.hpp"

namespace psme::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kUnsupportedRegime = 3,
  kBadTruncation = 4,
  kValidationFailed = 5,
};

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool pass() const;
  nlohmann::json to_json() const;
};

/// Evolves the configured state with the closed-form propagator and writes
/// the requested outputs. Progress and errors go to `log`.
int cmd_evolve(const RunConfig& config, std::ostream& log);

ValidationReport build_validation_report(const RunConfig& config);
/// Writes the report (to the configured validation output, else to `out`).
int cmd_validate(const RunConfig& config, std::ostream& out);

/// CSV rows (N, method, wall_time_s, trace_distance) comparing the analytic
/// propagator with the dense Liouvillian exponential at the last time.
int cmd_bench(const RunConfig& config, std::ostream& out);

/// Prints the resolved squeeze frame and transformed rates as JSON.
int cmd_params(const RunConfig& config, std::ostream& out);

/// Formats one Q grid as CSV: '#' provenance lines, then "x,y,q" rows with x
/// varying fastest and 17 significant digits.
std::string format_qgrid_csv(const QGrid& grid, const nlohmann::json& provenance);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace psme::cli
