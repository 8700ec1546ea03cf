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

#include "psme/types.hpp"

namespace psme::linalg {

/// Matrix exponential by scaling and squaring with a diagonal Pade
/// approximant of degree 3, 5, 7, 9 or 13 (chosen from the 1-norm).
CMatrix expm(const CMatrix& a);

double one_norm(const CMatrix& a);
double max_abs(const CMatrix& a);

/// max |A - A^dagger|.
double hermiticity_defect(const CMatrix& a);

CMatrix hermitian_part(const CMatrix& a);

/// Sum of singular values. For Hermitian input this is the sum of |eigenvalues|.
double trace_norm(const CMatrix& a);

/// Smallest eigenvalue of the Hermitian part of `a`.
double min_eigenvalue(const CMatrix& a);

/// Column-stacking vectorization: vec(rho)[i + N j] = rho(i, j).
CVector vec(const CMatrix& rho);
CMatrix unvec(const CVector& v, Eigen::Index n);

}  // namespace psme::linalg
