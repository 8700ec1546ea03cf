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

#include "psme/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "psme/linalg.hpp"
#include "psme/superops.hpp"

namespace psme::oracle {

namespace {

// l += coeff * (B^T kron A)
void add_sandwich(CMatrix& l, Complex coeff, const CMatrix& a, const CMatrix& b) {
  const Eigen::Index n = a.rows();
  const CMatrix bt = b.transpose();
  for (Eigen::Index p = 0; p < n; ++p) {
    for (Eigen::Index q = 0; q < n; ++q) {
      const Complex w = coeff * bt(p, q);
      if (w == Complex(0.0, 0.0)) continue;
      l.block(p * n, q * n, n, n) += w * a;
    }
  }
}

// One Lindblad term 2 X rho Y - Y X rho - rho Y X.
void add_term(CMatrix& l, Complex gamma, const CMatrix& x, const CMatrix& y) {
  if (gamma == Complex(0.0, 0.0)) return;
  const Eigen::Index n = x.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix yx = y * x;
  add_sandwich(l, 2.0 * gamma, x, y);
  add_sandwich(l, -gamma, yx, id);
  add_sandwich(l, -gamma, id, yx);
}

CMatrix rk4_run(const MasterEqParams& p, const CMatrix& rho0, double t, long steps) {
  const double h = t / static_cast<double>(steps);
  CMatrix rho = rho0;
  for (long s = 0; s < steps; ++s) {
    const CMatrix k1 = apply_generator(p, rho);
    const CMatrix k2 = apply_generator(p, rho + 0.5 * h * k1);
    const CMatrix k3 = apply_generator(p, rho + 0.5 * h * k2);
    const CMatrix k4 = apply_generator(p, rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!rho.allFinite()) break;
  }
  return rho;
}

}  // namespace

CMatrix Liouvillian::apply(const CMatrix& rho) const {
  const auto n = static_cast<Eigen::Index>(dim);
  return linalg::unvec(matrix * linalg::vec(rho), n);
}

Liouvillian build_liouvillian(const Couplings& c, FockDim dim, const NumericPolicy& policy) {
  if (dim.value() > policy.oracle_max_dim) {
    std::ostringstream msg;
    msg << "dense Liouvillian for N=" << dim.value() << " exceeds the cap N<="
        << policy.oracle_max_dim;
    throw ResourceLimit(msg.str());
  }
  const Eigen::Index n = dim.index();
  const CMatrix a = make_annihilation(dim);
  const CMatrix ad = a.adjoint();
  Liouvillian l{dim.value(), CMatrix::Zero(n * n, n * n)};
  add_term(l.matrix, c.gamma1, a, ad);
  add_term(l.matrix, c.gamma2, ad, a);
  add_term(l.matrix, c.gamma3, a, a);
  add_term(l.matrix, c.gamma4, ad, ad);
  return l;
}

Liouvillian build_liouvillian(const MasterEqParams& p, FockDim dim, const NumericPolicy& policy) {
  return build_liouvillian(Couplings::from(p), dim, policy);
}

DensityMatrix evolve_expm(const Liouvillian& l, const DensityMatrix& rho0, double t,
                          double* hermiticity_defect) {
  if (!(t >= 0.0)) throw InvalidArgument("time must be nonnegative");
  if (rho0.matrix().rows() != static_cast<Eigen::Index>(l.dim)) {
    throw DimMismatch("initial state and Liouvillian dimensions differ");
  }
  if (t == 0.0) {
    if (hermiticity_defect) *hermiticity_defect = 0.0;
    return rho0;
  }
  const CMatrix propagator = linalg::expm(l.matrix * t);
  const CMatrix rho = linalg::unvec(propagator * linalg::vec(rho0.matrix()), rho0.matrix().rows());
  if (hermiticity_defect) *hermiticity_defect = linalg::hermiticity_defect(rho);
  return DensityMatrix::from_matrix(linalg::hermitian_part(rho));
}

std::vector<DensityMatrix> evolve_expm(const Liouvillian& l, const DensityMatrix& rho0,
                                       std::span<const double> times) {
  std::vector<DensityMatrix> out;
  out.reserve(times.size());
  double base = 0.0;
  for (double t : times) {
    if (!(t >= 0.0)) throw InvalidArgument("time must be nonnegative");
    if (t > 0.0 && (base == 0.0 || t < base)) base = t;
  }
  bool commensurate = base > 0.0;
  for (double t : times) {
    const double k = t / base;
    if (commensurate && std::abs(k - std::round(k)) > 1e-12 * std::max(1.0, k)) {
      commensurate = false;
    }
  }
  if (!commensurate) {
    for (double t : times) out.push_back(evolve_expm(l, rho0, t));
    return out;
  }

  // Repeated application of one exponential: exp(L k dt) v = exp(L dt)^k v.
  const CMatrix step = linalg::expm(l.matrix * base);
  const Eigen::Index n = rho0.matrix().rows();
  for (double t : times) {
    const long k = std::lround(t / base);
    CVector v = linalg::vec(rho0.matrix());
    for (long s = 0; s < k; ++s) v = step * v;
    out.push_back(DensityMatrix::from_matrix(linalg::hermitian_part(linalg::unvec(v, n))));
  }
  return out;
}

DensityMatrix evolve_rk4(const MasterEqParams& p, const DensityMatrix& rho0, double t,
                         double dt_max, const NumericPolicy& policy) {
  if (!(t >= 0.0)) throw InvalidArgument("time must be nonnegative");
  if (!(dt_max > 0.0) || dt_max * (p.gamma1 + p.gamma2) > 0.05 + 1e-15) {
    throw InvalidArgument("RK4 needs 0 < dt_max * (gamma1 + gamma2) <= 0.05");
  }
  if (t == 0.0) return rho0;

  long steps = std::max(1L, static_cast<long>(std::ceil(t / dt_max)));
  CMatrix previous = rk4_run(p, rho0.matrix(), t, steps);
  for (int halving = 1; halving <= policy.rk4_max_halvings; ++halving) {
    steps *= 2;
    CMatrix current = rk4_run(p, rho0.matrix(), t, steps);
    if (current.allFinite() && previous.allFinite() &&
        linalg::max_abs(current - previous) <= policy.abs_tol) {
      return DensityMatrix::from_matrix(linalg::hermitian_part(current));
    }
    previous = std::move(current);
  }
  std::ostringstream msg;
  msg << "RK4 did not converge to " << policy.abs_tol << " after "
      << policy.rk4_max_halvings << " step halvings";
  throw NoConvergence(msg.str());
}

}  // namespace psme::oracle
