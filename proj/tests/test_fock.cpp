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

#include <gtest/gtest.h>

#include <cmath>

#include "psme/fock.hpp"
#include "psme/linalg.hpp"

namespace psme {
namespace {

TEST(FockDim, RejectsBelowTwo) {
  EXPECT_THROW(FockDim(1), InvalidArgument);
  EXPECT_THROW(FockDim(0), InvalidArgument);
  EXPECT_EQ(FockDim(2).value(), 2u);
}

TEST(Ladder, AnnihilationEntries) {
  const Operator a = make_annihilation(FockDim(3));
  EXPECT_EQ(a(0, 1), Complex(1.0, 0.0));
  EXPECT_DOUBLE_EQ(a(1, 2).real(), std::sqrt(2.0));
  EXPECT_EQ(a.cwiseAbs().sum(), 1.0 + std::sqrt(2.0));
  EXPECT_EQ(linalg::max_abs(make_creation(FockDim(3)) - a.adjoint()), 0.0);
}

TEST(Ladder, AnnihilatesVacuum) {
  const FockDim dim(6);
  EXPECT_EQ((make_annihilation(dim) * fock_state(0, dim)).norm(), 0.0);
}

TEST(Ladder, CommutatorInteriorIsIdentity) {
  const FockDim dim(10);
  const Operator a = make_annihilation(dim);
  const CMatrix c = a * a.adjoint() - a.adjoint() * a;
  EXPECT_LE(linalg::max_abs(c.topLeftCorner(9, 9) - CMatrix::Identity(9, 9)), 1e-14);
  EXPECT_NEAR(c(9, 9).real(), -9.0, 1e-14);
}

TEST(Ladder, NumberOperatorExactDiagonal) {
  const FockDim dim(12);
  const Operator a = make_annihilation(dim);
  const Operator n = make_number(dim);
  for (Eigen::Index k = 0; k < 12; ++k) EXPECT_EQ(n(k, k).real(), static_cast<double>(k));
  EXPECT_EQ(linalg::max_abs(n - CMatrix(n.diagonal().asDiagonal())), 0.0);
  EXPECT_LE(linalg::max_abs(a.adjoint() * a - n), 1e-14);
}

TEST(Ladder, LowerAndRaiseBothMatchProducts) {
  const FockDim dim(7);
  const Operator a = make_annihilation(dim);
  CMatrix x(7, 7);
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) x(i, j) = {0.1 * i - 0.05 * j, 0.02 * i * j};
  }
  EXPECT_LE(linalg::max_abs(lower_both(x) - a * x * a.adjoint()), 1e-15);
  EXPECT_LE(linalg::max_abs(raise_both(x) - a.adjoint() * x * a), 1e-15);
}

TEST(Squeeze, ZeroIsIdentity) {
  EXPECT_EQ(linalg::max_abs(make_squeeze({0.0, 0.0}, FockDim(8)) - CMatrix::Identity(8, 8)), 0.0);
}

TEST(Squeeze, VacuumAmplitude) {
  const Operator s = make_squeeze({0.7, 0.0}, FockDim(60));
  // sech(0.7)^(1/2), evaluated independently to 30 digits.
  EXPECT_NEAR(s(0, 0).real(), 0.892583587118245764, 1e-12);
  EXPECT_NEAR(squeeze_vacuum_defect(s, {0.7, 0.0}), 0.0, 1e-13);
}

TEST(Squeeze, ParityIsPreserved) {
  const Operator s = make_squeeze({0.7, 0.2}, FockDim(40));
  for (Eigen::Index col = 0; col < 6; ++col) {
    for (Eigen::Index row = 0; row < 40; ++row) {
      if ((row + col) % 2 == 1) EXPECT_EQ(s(row, col), Complex(0.0, 0.0));
    }
  }
}

TEST(Squeeze, UnitaryOnInterior) {
  const double r = 0.9;
  const Operator s = make_squeeze(std::polar(r, 1.1), FockDim(60));
  const Eigen::Index k = 60 - 2 * static_cast<Eigen::Index>(std::ceil(3 * r));
  const CMatrix g = (s.adjoint() * s).topLeftCorner(k, k);
  EXPECT_LE(linalg::max_abs(g - CMatrix::Identity(k, k)), 1e-8);
}

TEST(Squeeze, SmallDimensionIsBadTruncation) {
  EXPECT_THROW(make_squeeze({0.7, 0.0}, FockDim(8)), BadTruncation);
  EXPECT_NO_THROW(make_squeeze({0.7, 0.0}, FockDim(30)));
}

TEST(Squeeze, RejectsHugeSqueezing) {
  EXPECT_THROW(make_squeeze({10.0, 0.0}, FockDim(20)), InvalidArgument);
}

TEST(Squeeze, ActsAsBogoliubovTransform) {
  // S+ a S = mu a + nu a+ with mu = cosh r, nu = -sinh(r) e^{i varphi}.
  const double r = 0.5;
  const double phi = 0.8;
  const FockDim dim(120);
  const Operator s = make_squeeze(std::polar(r, phi), dim);
  const Operator a = make_annihilation(dim);
  const CMatrix lhs = s.adjoint() * a * s;
  const CMatrix rhs = std::cosh(r) * a - std::sinh(r) * std::polar(1.0, phi) * a.adjoint();
  // Columns of S spread by ~e^{2r}, so only a small corner is edge-free.
  EXPECT_LE(linalg::max_abs((lhs - rhs).topLeftCorner(10, 10)), 1e-10);
}

TEST(Coherent, VacuumAndAmplitude) {
  const CoherentState zero = coherent_state({0.0, 0.0}, FockDim(10));
  EXPECT_NEAR(std::abs(zero.amplitudes(0)), 1.0, 1e-15);
  const CoherentState one = coherent_state({1.0, 0.0}, FockDim(30));
  EXPECT_NEAR(one.amplitudes(1).real(), std::exp(-0.5), 1e-15);
  EXPECT_NEAR(one.amplitudes.norm(), 1.0, 1e-14);
}

TEST(Coherent, TailTooLargeIsBadTruncation) {
  EXPECT_THROW(coherent_state({2.0, 0.0}, FockDim(8)), BadTruncation);
  EXPECT_NO_THROW(coherent_state({2.0, 0.0}, FockDim(30)));
}

TEST(Coherent, RawAmplitudesAreNotRenormalized) {
  const StateVector raw = coherent_amplitudes({2.0, 0.0}, FockDim(4));
  EXPECT_LT(raw.squaredNorm(), 1.0);
  EXPECT_NEAR(raw(3).real(), std::exp(-2.0) * 8.0 / std::sqrt(6.0), 1e-15);
}

TEST(SqueezedNumber, VacuumCases) {
  const StateVector v = squeezed_number_state(0, {0.0, 0.0}, FockDim(5));
  EXPECT_NEAR(std::abs(v(0)), 1.0, 1e-15);
  const FockDim dim(60);
  const DensityMatrix rho = DensityMatrix::pure(squeezed_number_state(0, {0.7, 0.0}, dim));
  EXPECT_NEAR(rho.mean_photon(), std::pow(std::sinh(0.7), 2), 1e-10);
  EXPECT_NEAR(rho.mean_photon(), 0.575449232696570266, 1e-10);
}

TEST(SqueezedNumber, Orthonormal) {
  const FockDim dim(60);
  const Complex xi = std::polar(0.7, 0.3);
  for (std::size_t m = 0; m <= 5; ++m) {
    for (std::size_t k = 0; k <= 5; ++k) {
      const Complex ip = squeezed_number_state(m, xi, dim).dot(squeezed_number_state(k, xi, dim));
      EXPECT_NEAR(std::abs(ip - (m == k ? 1.0 : 0.0)), 0.0, 1e-10) << m << "," << k;
    }
  }
}

TEST(SqueezedNumber, IsSqueezeColumn) {
  const FockDim dim(30);
  const Complex xi{0.4, 0.1};
  EXPECT_EQ((squeezed_number_state(3, xi, dim) - make_squeeze(xi, dim).col(3)).norm(), 0.0);
  EXPECT_THROW(squeezed_number_state(30, xi, dim), InvalidArgument);
}

TEST(SqueezedNumber, ProjectionIsPaddedColumn) {
  const FockDim dim(20);
  const Complex xi{0.4, 0.1};
  const Operator s = make_squeeze(xi, squeeze_work_dim(dim, std::abs(xi)));
  EXPECT_EQ((squeezed_number_projection(3, xi, dim) - s.col(3).head(20)).norm(), 0.0);
  EXPECT_THROW(squeezed_number_projection(20, xi, dim), InvalidArgument);
}

TEST(SqueezedNumber, ProjectionIsAccurateWhereTheColumnIsNot) {
  // Level 40 of |0, 0.7> against the closed form
  // <2k|S|0> = (-tanh r)^k sqrt((2k)!) / (2^k k! sqrt(cosh r)).
  const double r = 0.7;
  const int k = 20;
  const double exact = std::pow(std::tanh(r), k) *
                       std::exp(0.5 * std::lgamma(2.0 * k + 1) - k * std::log(2.0) - std::lgamma(k + 1.0)) /
                       std::sqrt(std::cosh(r));
  const FockDim dim(42);
  EXPECT_NEAR(std::abs(squeezed_number_projection(0, {r, 0.0}, dim)(2 * k)), exact, 1e-14);
  EXPECT_GT(std::abs(std::abs(squeezed_number_state(0, {r, 0.0}, dim)(2 * k)) - exact), 1e-9);
}

TEST(SqueezeWorkDim, GrowsWithSqueezing) {
  EXPECT_EQ(squeeze_work_dim(FockDim(30), 0.0).value(), 30u + 30u + 32u);
  EXPECT_GT(squeeze_work_dim(FockDim(30), 0.7).value(), squeeze_work_dim(FockDim(30), 0.3).value());
  EXPECT_EQ(squeeze_work_dim(FockDim(30), 5.0).value(), kMaxWorkDim);
}

TEST(DensityMatrixTest, ValidatesInput) {
  EXPECT_THROW(DensityMatrix::from_matrix(CMatrix::Zero(2, 3)), DimMismatch);
  CMatrix bad = CMatrix::Zero(3, 3);
  bad(0, 1) = 1.0;
  EXPECT_THROW(DensityMatrix::from_matrix(bad), InvalidArgument);
  bad(0, 1) = std::nan("");
  EXPECT_THROW(DensityMatrix::from_matrix(bad), InvalidArgument);
}

TEST(DensityMatrixTest, Diagnostics) {
  const FockDim dim(6);
  const DensityMatrix rho = DensityMatrix::fock(5, dim);
  EXPECT_EQ(rho.boundary_population(), 1.0);
  EXPECT_EQ(rho.trace(), 1.0);
  EXPECT_NEAR(rho.mean_photon(), 5.0, 1e-15);
  EXPECT_NEAR(rho.min_eigenvalue(), 0.0, 1e-15);
  const DensityMatrix big = rho.embedded(FockDim(9));
  EXPECT_EQ(big.dim().value(), 9u);
  EXPECT_EQ(big.boundary_population(), 0.0);
  EXPECT_EQ(big.truncated(dim).matrix(), rho.matrix());
}

TEST(DensityMatrixTest, MeanAnnihilationOfCoherent) {
  const Complex beta{0.6, -0.4};
  const DensityMatrix rho = DensityMatrix::pure(coherent_state(beta, FockDim(30)).amplitudes);
  EXPECT_NEAR(std::abs(rho.mean_annihilation() - beta), 0.0, 1e-12);
}

TEST(TraceDistance, Examples) {
  const FockDim dim(4);
  const DensityMatrix zero = DensityMatrix::fock(0, dim);
  const DensityMatrix one = DensityMatrix::fock(1, dim);
  EXPECT_EQ(trace_distance(zero, zero), 0.0);
  EXPECT_NEAR(trace_distance(zero, one), 1.0, 1e-15);
  const DensityMatrix half = DensityMatrix::from_matrix(0.5 * (zero.matrix() + one.matrix()));
  EXPECT_NEAR(trace_distance(zero, half), 0.5, 1e-15);
  EXPECT_NEAR(trace_distance(half, zero), 0.5, 1e-15);
  EXPECT_THROW(trace_distance(zero, DensityMatrix::fock(0, FockDim(5))), DimMismatch);
}

}  // namespace
}  // namespace psme
