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

#include <array>

#include "psme/rates.hpp"
#include "psme/types.hpp"

namespace psme {

enum class Lindblad { L1, L2, L3, L4 };
enum class JKind { J1, J2, J3 };
enum class Dimensionless { Lminus, Lplus, L3 };

/// The four Lindblad terms with an arbitrary mode operator `c`:
///   L1 = 2 c rho c+ - c+c rho - rho c+c      L2 = 2 c+ rho c - c c+ rho - rho c c+
///   L3 = 2 c rho c  - c^2 rho - rho c^2      L4 = 2 c+ rho c+ - c+^2 rho - rho c+^2
/// Evaluated with dense matrix products.
CMatrix apply_lindblad(Lindblad term, const CMatrix& rho, const Operator& mode);

/// sum_k gamma_k L_k(a, a+) rho with gamma4 = conj(gamma3).
///
/// Uses banded ladder kernels (O(N^2)) rather than apply_lindblad, so the two
/// can be checked against each other. Appends an EdgeSupport warning when rho
/// has weight on the top two levels and `warnings` is non-null.
CMatrix apply_generator(const MasterEqParams& p, const CMatrix& rho, Warnings* warnings = nullptr);

/// J1 rho = 2 gt1 a rho a+, J2 rho = 2 gt2 a+ rho a,
/// J3 rho = -(gt1 + gt2)(a+a rho + rho a+a).
CMatrix apply_j(JKind kind, const TransformedRates& rates, const CMatrix& rho);

/// Max-norm residuals of
///   [J2,J1] = 4 gt1 gt2/(gt1+gt2) J3 - 4 gt1 gt2,
///   [J1,J3] = -2(gt1+gt2) J1,
///   [J2,J3] = +2(gt1+gt2) J2
/// evaluated on rho.
std::array<double, 3> commutator_residuals(const TransformedRates& rates, const CMatrix& rho,
                                           Warnings* warnings = nullptr);

/// L- rho = c rho c+, L+ rho = c+ rho c, L3 rho = c+c rho + rho c+c + rho.
CMatrix apply_dimensionless(Dimensionless kind, const Operator& mode, const CMatrix& rho);

/// Max-norm residuals of [L-,L+] - L3, [L3,L+] - 2L+ and [L3,L-] + 2L-.
std::array<double, 3> dimensionless_residuals(const Operator& mode, const CMatrix& rho);

/// True when every entry in a row or column >= N - margin has modulus <= tol.
bool interior_supported(const CMatrix& rho, std::size_t margin, double tol = 0.0);

/// mu a - nu a+, the frame-rotated mode S a S+ written with Bogoliubov coefficients.
Operator rotated_mode(const SqueezeParams& sq, FockDim dim);

}  // namespace psme
