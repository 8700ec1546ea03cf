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

#include "psme/superops.hpp"

#include <algorithm>
#include <cmath>

#include "psme/fock.hpp"
#include "psme/linalg.hpp"

namespace psme {

namespace {

void require_square_match(const CMatrix& rho, const Operator& mode) {
  if (rho.rows() != rho.cols() || mode.rows() != rho.rows() || mode.cols() != rho.cols()) {
    throw DimMismatch("superoperator: operator and matrix dimensions differ");
  }
}

// Banded ladder actions. Each mirrors the dense product with the truncated
// matrix exactly, including what falls off the top level.
CMatrix a_left(const CMatrix& x) {  // a X
  const Eigen::Index n = x.rows();
  CMatrix out = CMatrix::Zero(n, x.cols());
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    out.row(i) = std::sqrt(static_cast<double>(i + 1)) * x.row(i + 1);
  }
  return out;
}

CMatrix ad_left(const CMatrix& x) {  // a+ X
  const Eigen::Index n = x.rows();
  CMatrix out = CMatrix::Zero(n, x.cols());
  for (Eigen::Index i = 1; i < n; ++i) {
    out.row(i) = std::sqrt(static_cast<double>(i)) * x.row(i - 1);
  }
  return out;
}

CMatrix a_right(const CMatrix& x) {  // X a
  const Eigen::Index n = x.cols();
  CMatrix out = CMatrix::Zero(x.rows(), n);
  for (Eigen::Index j = 1; j < n; ++j) {
    out.col(j) = std::sqrt(static_cast<double>(j)) * x.col(j - 1);
  }
  return out;
}

CMatrix ad_right(const CMatrix& x) {  // X a+
  const Eigen::Index n = x.cols();
  CMatrix out = CMatrix::Zero(x.rows(), n);
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    out.col(j) = std::sqrt(static_cast<double>(j + 1)) * x.col(j + 1);
  }
  return out;
}

double max_abs(const CMatrix& m) { return linalg::max_abs(m); }

}  // namespace

CMatrix apply_lindblad(Lindblad term, const CMatrix& rho, const Operator& mode) {
  require_square_match(rho, mode);
  const Operator& c = mode;
  const Operator cd = mode.adjoint();
  switch (term) {
    case Lindblad::L1: {
      const Operator n = cd * c;
      return 2.0 * c * rho * cd - n * rho - rho * n;
    }
    case Lindblad::L2: {
      const Operator n = c * cd;
      return 2.0 * cd * rho * c - n * rho - rho * n;
    }
    case Lindblad::L3: {
      const Operator c2 = c * c;
      return 2.0 * c * rho * c - c2 * rho - rho * c2;
    }
    case Lindblad::L4: {
      const Operator c2 = cd * cd;
      return 2.0 * cd * rho * cd - c2 * rho - rho * c2;
    }
  }
  throw InvalidArgument("unknown Lindblad term");
}

bool interior_supported(const CMatrix& rho, std::size_t margin, double tol) {
  const Eigen::Index n = rho.rows();
  const Eigen::Index start = std::max<Eigen::Index>(0, n - static_cast<Eigen::Index>(margin));
  if (start >= n) return true;
  const double rows = rho.bottomRows(n - start).cwiseAbs().maxCoeff();
  const double cols = rho.rightCols(n - start).cwiseAbs().maxCoeff();
  return std::max(rows, cols) <= tol;
}

CMatrix apply_generator(const MasterEqParams& p, const CMatrix& rho, Warnings* warnings) {
  if (rho.rows() != rho.cols()) throw DimMismatch("apply_generator: rho must be square");
  if (warnings && !interior_supported(rho, 2)) {
    warnings->push_back({WarningKind::EdgeSupport,
                         "rho has weight on the top two Fock levels; truncation is active"});
  }

  const CMatrix a_rho = a_left(rho);
  const CMatrix ad_rho = ad_left(rho);
  const CMatrix rho_a = a_right(rho);
  const CMatrix rho_ad = ad_right(rho);

  CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
  if (p.gamma1 != 0.0) {
    out += p.gamma1 * (2.0 * ad_right(a_rho) - ad_left(a_rho) - a_right(rho_ad));
  }
  if (p.gamma2 != 0.0) {
    out += p.gamma2 * (2.0 * a_right(ad_rho) - a_left(ad_rho) - ad_right(rho_a));
  }
  const Complex g3 = p.gamma3;
  if (g3 != Complex(0.0, 0.0)) {
    const Complex g4 = std::conj(g3);
    out += g3 * (2.0 * a_right(a_rho) - a_left(a_rho) - a_right(rho_a));
    out += g4 * (2.0 * ad_right(ad_rho) - ad_left(ad_rho) - ad_right(rho_ad));
  }
  return out;
}

CMatrix apply_j(JKind kind, const TransformedRates& rates, const CMatrix& rho) {
  const FockDim dim(static_cast<std::size_t>(rho.rows()));
  const Operator a = make_annihilation(dim);
  require_square_match(rho, a);
  const Operator ad = a.adjoint();
  switch (kind) {
    case JKind::J1:
      return 2.0 * rates.gt1 * a * rho * ad;
    case JKind::J2:
      return 2.0 * rates.gt2 * ad * rho * a;
    case JKind::J3: {
      const Operator n = ad * a;
      return -(rates.gt1 + rates.gt2) * (n * rho + rho * n);
    }
  }
  throw InvalidArgument("unknown J superoperator");
}

std::array<double, 3> commutator_residuals(const TransformedRates& rates, const CMatrix& rho,
                                           Warnings* warnings) {
  if (warnings && !interior_supported(rho, 2)) {
    warnings->push_back({WarningKind::EdgeSupport,
                         "commutator check on a matrix with weight on the top two levels"});
  }
  auto j = [&](JKind k, const CMatrix& x) { return apply_j(k, rates, x); };
  const double sum = rates.gt1 + rates.gt2;
  const double prod = rates.gt1 * rates.gt2;

  const CMatrix j1 = j(JKind::J1, rho);
  const CMatrix j2 = j(JKind::J2, rho);
  const CMatrix j3 = j(JKind::J3, rho);

  const CMatrix c21 = j(JKind::J2, j1) - j(JKind::J1, j2);
  const double ratio = sum != 0.0 ? 4.0 * prod / sum : 0.0;
  const CMatrix rhs21 = ratio * j3 - 4.0 * prod * rho;
  const CMatrix c13 = j(JKind::J1, j3) - j(JKind::J3, j1);
  const CMatrix c23 = j(JKind::J2, j3) - j(JKind::J3, j2);

  return {max_abs(c21 - rhs21), max_abs(c13 + 2.0 * sum * j1), max_abs(c23 - 2.0 * sum * j2)};
}

CMatrix apply_dimensionless(Dimensionless kind, const Operator& mode, const CMatrix& rho) {
  require_square_match(rho, mode);
  const Operator& c = mode;
  const Operator cd = mode.adjoint();
  switch (kind) {
    case Dimensionless::Lminus:
      return c * rho * cd;
    case Dimensionless::Lplus:
      return cd * rho * c;
    case Dimensionless::L3: {
      const Operator n = cd * c;
      return n * rho + rho * n + rho;
    }
  }
  throw InvalidArgument("unknown dimensionless superoperator");
}

std::array<double, 3> dimensionless_residuals(const Operator& mode, const CMatrix& rho) {
  auto op = [&](Dimensionless k, const CMatrix& x) { return apply_dimensionless(k, mode, x); };
  using D = Dimensionless;
  const CMatrix lm = op(D::Lminus, rho);
  const CMatrix lp = op(D::Lplus, rho);
  const CMatrix l3 = op(D::L3, rho);
  const CMatrix c_mp = op(D::Lminus, lp) - op(D::Lplus, lm);
  const CMatrix c_3p = op(D::L3, lp) - op(D::Lplus, l3);
  const CMatrix c_3m = op(D::L3, lm) - op(D::Lminus, l3);
  return {max_abs(c_mp - l3), max_abs(c_3p - 2.0 * lp), max_abs(c_3m + 2.0 * lm)};
}

Operator rotated_mode(const SqueezeParams& sq, FockDim dim) {
  const Operator a = make_annihilation(dim);
  return sq.mu * a - sq.nu * a.adjoint();
}

}  // namespace psme
