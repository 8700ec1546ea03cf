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

#include <cstddef>

namespace psme {

/// Every numerical threshold used by the library lives here.
///
/// Functions take the policy by const reference with a default-constructed
/// value, so callers only build one when they want to override something.
/// `abs_tol` is the knob exposed to users (CLI and PSME_TOLERANCE).
struct NumericPolicy {
  double abs_tol = 1e-10;

  double hermiticity_tol = 1e-12;
  double squeeze_defect_tol = 1e-8;      // |<0|S|0> - sech(r)^1/2|
  double series_term_tol = 1e-16;        // operator-exponential series cutoff
  double boundary_population_tol = 1e-8; // rho_{N-1,N-1} of propagated states
  double norm_drift_tol = 1e-6;          // largest trace error we renormalize
  double mixture_weight_tol = 1e-12;     // geometric-series cutoff
  int rk4_max_halvings = 12;
  std::size_t oracle_max_dim = 48;       // N^2 x N^2 dense Liouvillian cap

  /// Defaults, with `abs_tol` replaced by PSME_TOLERANCE when that variable
  /// is set to a positive number.
  static NumericPolicy from_env();
};

}  // namespace psme
