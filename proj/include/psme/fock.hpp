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

#include "psme/numeric_policy.hpp"
#include "psme/types.hpp"

namespace psme {

// Ladder operators in the truncated basis. <n-1|a|n> = sqrt(n).
Operator make_annihilation(FockDim dim);
Operator make_creation(FockDim dim);
Operator make_number(FockDim dim);

/// a X a^dagger without forming the ladder matrices (O(N^2)).
CMatrix lower_both(const CMatrix& x);
/// a^dagger X a, same idea. Weight pushed above level N-1 is dropped.
CMatrix raise_both(const CMatrix& x);

/// S(xi) = exp((conj(xi) a^2 - xi a^dagger^2) / 2), built by a dense matrix
/// exponential of the truncated generator.
///
/// The truncated exponential is exactly unitary, so truncation damage is
/// measured on the vacuum column instead: <0|S|0> must equal sech(r)^(1/2).
/// Throws BadTruncation when the defect exceeds `policy.squeeze_defect_tol`.
/// Requires |xi| < 10.
Operator make_squeeze(Complex xi, FockDim dim, const NumericPolicy& policy = {});

/// |<0|S|0> - sech(|xi|)^(1/2)| for a squeeze matrix built for `xi`.
double squeeze_vacuum_defect(const Operator& squeeze, Complex xi);

/// Padded dimension in which S(r) is accurate on the lowest N columns.
/// Column m of S(r) spreads over roughly m e^{2r} levels, so this is
/// N + ceil(N e^{2r}) + 32, capped at max(2N + 16, kMaxWorkDim).
inline constexpr std::size_t kMaxWorkDim = 1200;
FockDim squeeze_work_dim(FockDim dim, double r);

StateVector fock_state(std::size_t m, FockDim dim);

/// <n|beta> = exp(-|beta|^2/2) beta^n / sqrt(n!) for n < N, not renormalized.
StateVector coherent_amplitudes(Complex beta, FockDim dim);

struct CoherentState {
  StateVector amplitudes;  // renormalized to unit norm
  double tail_probability; // weight of levels >= N before renormalization
};

/// Throws BadTruncation when the discarded tail exceeds `policy.abs_tol`.
CoherentState coherent_state(Complex beta, FockDim dim, const NumericPolicy& policy = {});

/// |m, xi> = S(xi)|m>, i.e. column m of make_squeeze(xi, dim). Exactly
/// orthonormal, but the entries near level N carry the truncation damage of
/// the squeeze matrix.
StateVector squeezed_number_state(std::size_t m, Complex xi, FockDim dim,
                                  const NumericPolicy& policy = {});

/// The infinite-dimensional |m, xi> projected onto the first N levels (not
/// renormalized). S is built in squeeze_work_dim(N, |xi|) levels, so every
/// retained entry is accurate; the norm falls short of one by the weight
/// the state has above level N-1.
StateVector squeezed_number_projection(std::size_t m, Complex xi, FockDim dim,
                                       const NumericPolicy& policy = {});

/// Hermitian N x N matrix in the Fock basis.
///
/// Construction checks squareness, finiteness and Hermiticity; the trace is
/// not forced to one so that unnormalized intermediate states can be held.
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(CMatrix m, double hermiticity_tol = 1e-12);
  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix fock(std::size_t m, FockDim dim);

  const CMatrix& matrix() const { return m_; }
  FockDim dim() const { return FockDim(static_cast<std::size_t>(m_.rows())); }

  double trace() const { return m_.trace().real(); }
  /// Population of the highest retained level, rho_{N-1,N-1}.
  double boundary_population() const { return m_(m_.rows() - 1, m_.cols() - 1).real(); }
  double min_eigenvalue() const;
  double mean_photon() const;
  Complex mean_annihilation() const;

  /// Zero-padded copy in a larger space.
  DensityMatrix embedded(FockDim larger) const;
  /// Top-left block in a smaller space.
  DensityMatrix truncated(FockDim smaller) const;

 private:
  explicit DensityMatrix(CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;
};

/// Half the trace norm of r1 - r2. Throws DimMismatch.
double trace_distance(const DensityMatrix& r1, const DensityMatrix& r2);

}  // namespace psme
