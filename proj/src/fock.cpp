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

#include "psme/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "psme/linalg.hpp"

namespace psme {

Operator make_annihilation(FockDim dim) {
  const Eigen::Index n = dim.index();
  Operator a = Operator::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) {
    a(k - 1, k) = std::sqrt(static_cast<double>(k));
  }
  return a;
}

Operator make_creation(FockDim dim) { return make_annihilation(dim).adjoint(); }

Operator make_number(FockDim dim) {
  const Eigen::Index n = dim.index();
  Operator num = Operator::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) num(k, k) = static_cast<double>(k);
  return num;
}

CMatrix lower_both(const CMatrix& x) {
  const Eigen::Index n = x.rows();
  CMatrix out = CMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    const double sj = std::sqrt(static_cast<double>(j + 1));
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      out(i, j) = std::sqrt(static_cast<double>(i + 1)) * sj * x(i + 1, j + 1);
    }
  }
  return out;
}

CMatrix raise_both(const CMatrix& x) {
  const Eigen::Index n = x.rows();
  CMatrix out = CMatrix::Zero(n, n);
  for (Eigen::Index j = 1; j < n; ++j) {
    const double sj = std::sqrt(static_cast<double>(j));
    for (Eigen::Index i = 1; i < n; ++i) {
      out(i, j) = std::sqrt(static_cast<double>(i)) * sj * x(i - 1, j - 1);
    }
  }
  return out;
}

double squeeze_vacuum_defect(const Operator& squeeze, Complex xi) {
  const double expected = 1.0 / std::sqrt(std::cosh(std::abs(xi)));
  return std::abs(squeeze(0, 0) - expected);
}

Operator make_squeeze(Complex xi, FockDim dim, const NumericPolicy& policy) {
  if (!(std::abs(xi) < 10.0)) {
    throw InvalidArgument("squeeze parameter |xi| must be < 10");
  }
  if (xi == Complex(0.0, 0.0)) {
    return Operator::Identity(dim.index(), dim.index());
  }
  const Operator a = make_annihilation(dim);
  const Operator a2 = a * a;
  const Operator generator = 0.5 * (std::conj(xi) * a2 - xi * a2.adjoint());
  Operator s = linalg::expm(generator);

  const double defect = squeeze_vacuum_defect(s, xi);
  if (defect > policy.squeeze_defect_tol) {
    std::ostringstream msg;
    msg << "squeeze |xi|=" << std::abs(xi) << " does not fit in N=" << dim.value()
        << " (vacuum amplitude defect " << defect << ")";
    throw BadTruncation(msg.str());
  }
  return s;
}

StateVector fock_state(std::size_t m, FockDim dim) {
  if (m >= dim.value()) throw InvalidArgument("Fock index outside the truncated space");
  StateVector v = StateVector::Zero(dim.index());
  v(static_cast<Eigen::Index>(m)) = 1.0;
  return v;
}

StateVector coherent_amplitudes(Complex beta, FockDim dim) {
  const Eigen::Index n = dim.index();
  StateVector c(n);
  c(0) = std::exp(-0.5 * std::norm(beta));
  for (Eigen::Index k = 1; k < n; ++k) {
    c(k) = c(k - 1) * beta / std::sqrt(static_cast<double>(k));
  }
  return c;
}

CoherentState coherent_state(Complex beta, FockDim dim, const NumericPolicy& policy) {
  StateVector c = coherent_amplitudes(beta, dim);
  const double kept = c.squaredNorm();
  const double tail = std::max(0.0, 1.0 - kept);
  if (tail > policy.abs_tol) {
    std::ostringstream msg;
    msg << "coherent state beta=" << beta << " loses " << tail << " probability at N="
        << dim.value();
    throw BadTruncation(msg.str());
  }
  c /= std::sqrt(kept);
  return {std::move(c), tail};
}

StateVector squeezed_number_state(std::size_t m, Complex xi, FockDim dim,
                                  const NumericPolicy& policy) {
  if (m >= dim.value()) throw InvalidArgument("Fock index outside the truncated space");
  return make_squeeze(xi, dim, policy).col(static_cast<Eigen::Index>(m));
}

StateVector squeezed_number_projection(std::size_t m, Complex xi, FockDim dim,
                                       const NumericPolicy& policy) {
  if (m >= dim.value()) throw InvalidArgument("Fock index outside the truncated space");
  const Operator s = make_squeeze(xi, squeeze_work_dim(dim, std::abs(xi)), policy);
  return s.col(static_cast<Eigen::Index>(m)).head(dim.index());
}

FockDim squeeze_work_dim(FockDim dim, double r) {
  const double n = static_cast<double>(dim.value());
  const double spread = std::ceil(n * std::exp(2.0 * std::abs(r))) + 32.0;
  const double cap = std::max(2.0 * n + 16.0, static_cast<double>(kMaxWorkDim));
  return FockDim(static_cast<std::size_t>(n + std::min(spread, cap - n)));
}

DensityMatrix DensityMatrix::from_matrix(CMatrix m, double hermiticity_tol) {
  if (m.rows() != m.cols()) throw DimMismatch("density matrix must be square");
  if (m.rows() < 2) throw InvalidArgument("density matrix needs at least two Fock levels");
  if (!m.allFinite()) throw InvalidArgument("density matrix has non-finite entries");
  const double scale = std::max(1.0, linalg::max_abs(m));
  const double defect = linalg::hermiticity_defect(m);
  if (defect > hermiticity_tol * scale) {
    std::ostringstream msg;
    msg << "density matrix is not Hermitian (defect " << defect << ")";
    throw InvalidArgument(msg.str());
  }
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return from_matrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::fock(std::size_t m, FockDim dim) {
  return pure(fock_state(m, dim));
}

double DensityMatrix::min_eigenvalue() const { return linalg::min_eigenvalue(m_); }

double DensityMatrix::mean_photon() const {
  double n = 0.0;
  for (Eigen::Index k = 1; k < m_.rows(); ++k) n += static_cast<double>(k) * m_(k, k).real();
  return n;
}

Complex DensityMatrix::mean_annihilation() const {
  // tr(a rho) = sum_k sqrt(k) rho_{k,k-1}
  Complex s(0.0, 0.0);
  for (Eigen::Index k = 1; k < m_.rows(); ++k) {
    s += std::sqrt(static_cast<double>(k)) * m_(k, k - 1);
  }
  return s;
}

DensityMatrix DensityMatrix::embedded(FockDim larger) const {
  if (larger.index() < m_.rows()) throw DimMismatch("embedding target is smaller");
  CMatrix big = CMatrix::Zero(larger.index(), larger.index());
  big.topLeftCorner(m_.rows(), m_.cols()) = m_;
  return DensityMatrix(std::move(big));
}

DensityMatrix DensityMatrix::truncated(FockDim smaller) const {
  if (smaller.index() > m_.rows()) throw DimMismatch("truncation target is larger");
  return DensityMatrix(m_.topLeftCorner(smaller.index(), smaller.index()));
}

double trace_distance(const DensityMatrix& r1, const DensityMatrix& r2) {
  if (r1.matrix().rows() != r2.matrix().rows()) {
    throw DimMismatch("trace_distance: dimensions differ");
  }
  const CMatrix diff = linalg::hermitian_part(r1.matrix() - r2.matrix());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(diff, Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace psme
