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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "psme/fock.hpp"
#include "psme/numeric_policy.hpp"
#include "psme/phasespace.hpp"
#include "psme/rates.hpp"

namespace psme::cli {

/// Malformed or inconsistent configuration (exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct InitialState {
  enum class Kind { Vacuum, Fock, Coherent, SqueezedVacuum, SqueezedThermal };

  Kind kind = Kind::Vacuum;
  std::size_t m = 0;
  Complex beta{0.0, 0.0};
  Complex xi{0.0, 0.0};
  double nbar = 0.0;

  DensityMatrix build(FockDim dim, const NumericPolicy& policy = {}) const;
  nlohmann::json to_json() const;
};

struct OutputSpec {
  enum class Kind { QGrid, Moments, DensityMatrix, Validation };
  Kind kind;
  std::string path;
};

struct RunConfig {
  MasterEqParams params;
  std::string param_source = "raw";  // raw | decay | amplification | figure1
  Warnings param_warnings;
  /// Explicit gamma4 from the config. Only the oracle and the validation
  /// report see it; every other path uses conj(gamma3).
  std::optional<Complex> gamma4_override;

  InitialState initial;
  std::size_t dim = 30;
  std::vector<double> times;
  std::optional<GridSpec> grid;
  std::vector<OutputSpec> outputs;
  std::vector<std::size_t> bench_dims{10, 20, 30, 40};

  NumericPolicy policy;

  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig load(const std::filesystem::path& path);
  /// figure1 couplings, vacuum, N = 30, kappa t in {0.025, 0.05}. The figure1
  /// couplings spread the vacuum fast enough that later times outgrow N = 30.
  static RunConfig default_validation();
};

/// Resolved parameter set echoed into every output file.
nlohmann::json provenance(const RunConfig& config);

}  // namespace psme::cli
