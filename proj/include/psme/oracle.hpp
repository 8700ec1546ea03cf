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

#include <span>
#include <vector>

#include "psme/fock.hpp"
#include "psme/numeric_policy.hpp"
#include "psme/rates.hpp"

namespace psme::oracle {

/// Raw couplings of the four Lindblad terms. Unlike MasterEqParams, gamma4
/// is free here, so broken (non-Hermitian) generators can be represented.
struct Couplings {
  Complex gamma1;
  Complex gamma2;
  Complex gamma3;
  Complex gamma4;

  static Couplings from(const MasterEqParams& p) {
    return {p.gamma1, p.gamma2, p.gamma3, std::conj(p.gamma3)};
  }
};

/// Dense N^2 x N^2 generator acting on column-stacked density matrices.
struct Liouvillian {
  std::size_t dim = 0;
  CMatrix matrix;

  CMatrix apply(const CMatrix& rho) const;
};

/// Builds sum_k gamma_k L_k from Kronecker products, A rho B -> (B^T kron A) vec(rho).
/// Throws ResourceLimit when N exceeds `policy.oracle_max_dim`.
Liouvillian build_liouvillian(const Couplings& c, FockDim dim, const NumericPolicy& policy = {});
Liouvillian build_liouvillian(const MasterEqParams& p, FockDim dim, const NumericPolicy& policy = {});

/// unvec(exp(L t) vec(rho0)), Hermitized. The Hermiticity defect removed by
/// that last step is written to `hermiticity_defect` when non-null.
DensityMatrix evolve_expm(const Liouvillian& l, const DensityMatrix& rho0, double t,
                          double* hermiticity_defect = nullptr);

/// Same as evolve_expm for several times, reusing exp(L t_k) where times are
/// integer multiples of the smallest positive one.
std::vector<DensityMatrix> evolve_expm(const Liouvillian& l, const DensityMatrix& rho0,
                                       std::span<const double> times);

/// Classical RK4 on d(rho)/dt = apply_generator(p, rho). Starts from a step
/// of at most `dt_max` and halves it until two successive runs agree within
/// `policy.abs_tol` (max-norm). Needs dt_max (gamma1 + gamma2) <= 0.05.
/// Throws NoConvergence after `policy.rk4_max_halvings` halvings.
DensityMatrix evolve_rk4(const MasterEqParams& p, const DensityMatrix& rho0, double t,
                         double dt_max, const NumericPolicy& policy = {});

}  // namespace psme::oracle
