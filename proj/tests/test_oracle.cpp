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

#include <random>
#include <vector>

#include "psme/linalg.hpp"
#include "psme/oracle.hpp"
#include "psme/superops.hpp"

namespace psme {
namespace {

DensityMatrix start(FockDim dim) {
  const CMatrix m = 0.7 * DensityMatrix::pure(coherent_state({0.4, 0.3}, dim).amplitudes).matrix() +
                    0.3 * DensityMatrix::fock(1, dim).matrix();
  return DensityMatrix::from_matrix(m);
}

MasterEqParams mild() {
  MasterEqParams p;
  p.gamma1 = 1.3;
  p.gamma2 = 0.2;
  p.gamma3 = std::polar(0.25, 0.4);
  return p;
}

TEST(Liouvillian, MatchesGenerator) {
  const FockDim dim(10);
  const MasterEqParams p = mild();
  const oracle::Liouvillian l = oracle::build_liouvillian(p, dim);
  EXPECT_EQ(l.matrix.rows(), 100);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  CMatrix x(10, 10);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = {g(rng), g(rng)};
  EXPECT_LE(linalg::max_abs(l.apply(x) - apply_generator(p, x)), 1e-13);
}

TEST(Liouvillian, DimensionCap) {
  EXPECT_NO_THROW(oracle::build_liouvillian(mild(), FockDim(4)));
  EXPECT_THROW(oracle::build_liouvillian(mild(), FockDim(49)), ResourceLimit);
  NumericPolicy small;
  small.oracle_max_dim = 8;
  EXPECT_THROW(oracle::build_liouvillian(mild(), FockDim(9), small), ResourceLimit);
}

TEST(Expm, ZeroTimeAndErrors) {
  const FockDim dim(12);
  const oracle::Liouvillian l = oracle::build_liouvillian(mild(), dim);
  const DensityMatrix rho = start(dim);
  EXPECT_LE(trace_distance(oracle::evolve_expm(l, rho, 0.0), rho), 1e-15);
  EXPECT_THROW(oracle::evolve_expm(l, rho, -1.0), InvalidArgument);
  EXPECT_THROW(oracle::evolve_expm(l, DensityMatrix::fock(1, FockDim(8)), 0.1), DimMismatch);
}

TEST(Expm, AgreesWithRk4) {
  const FockDim dim(20);
  const MasterEqParams p = figure1_params();
  const oracle::Liouvillian l = oracle::build_liouvillian(p, dim);
  const DensityMatrix rho = DensityMatrix::fock(0, dim);
  const double t = 0.02;
  const double dt = 0.05 / (p.gamma1 + p.gamma2);
  EXPECT_LE(trace_distance(oracle::evolve_expm(l, rho, t), oracle::evolve_rk4(p, rho, t, dt)), 1e-9);
  const FockDim d2(16);
  const MasterEqParams q = mild();
  const DensityMatrix r2 = start(d2);
  const auto l2 = oracle::build_liouvillian(q, d2);
  EXPECT_LE(trace_distance(oracle::evolve_expm(l2, r2, 0.7), oracle::evolve_rk4(q, r2, 0.7, 0.02)),
            1e-9);
}

TEST(Expm, Semigroup) {
  const FockDim dim(16);
  const oracle::Liouvillian l = oracle::build_liouvillian(mild(), dim);
  const DensityMatrix rho = start(dim);
  const DensityMatrix a = oracle::evolve_expm(l, oracle::evolve_expm(l, rho, 0.3), 0.5);
  EXPECT_LE(trace_distance(a, oracle::evolve_expm(l, rho, 0.8)), 1e-12);
}

TEST(Expm, Linearity) {
  const FockDim dim(14);
  const oracle::Liouvillian l = oracle::build_liouvillian(mild(), dim);
  const DensityMatrix r1 = DensityMatrix::fock(2, dim);
  const DensityMatrix r2 = start(dim);
  const DensityMatrix mix = DensityMatrix::from_matrix(0.25 * r1.matrix() + 0.75 * r2.matrix());
  const CMatrix lhs = oracle::evolve_expm(l, mix, 0.6).matrix();
  const CMatrix rhs = 0.25 * oracle::evolve_expm(l, r1, 0.6).matrix() +
                      0.75 * oracle::evolve_expm(l, r2, 0.6).matrix();
  EXPECT_LE(linalg::max_abs(lhs - rhs), 1e-10);
}

TEST(Expm, HermiticityDefectReported) {
  const FockDim dim(12);
  const oracle::Liouvillian l = oracle::build_liouvillian(mild(), dim);
  double defect = -1.0;
  oracle::evolve_expm(l, start(dim), 0.4, &defect);
  EXPECT_GE(defect, 0.0);
  EXPECT_LE(defect, 1e-12);
}

TEST(Expm, MultiTimeMatchesSingleCalls) {
  const FockDim dim(14);
  const oracle::Liouvillian l = oracle::build_liouvillian(mild(), dim);
  const DensityMatrix rho = start(dim);
  for (const std::vector<double>& times :
       {std::vector<double>{0.0, 0.1, 0.2, 0.5}, std::vector<double>{0.13, 0.71, 1.9}}) {
    const std::vector<DensityMatrix> out = oracle::evolve_expm(l, rho, times);
    ASSERT_EQ(out.size(), times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
      EXPECT_LE(trace_distance(out[k], oracle::evolve_expm(l, rho, times[k])), 1e-12) << times[k];
    }
  }
}

TEST(Expm, NetGainIsAllowed) {
  const FockDim dim(30);
  const MasterEqParams p = amplification_params(1.0, 0.5, {0.2, 0.1}).params;
  const oracle::Liouvillian l = oracle::build_liouvillian(p, dim);
  const std::vector<double> times{0.05, 0.1, 0.2};
  const std::vector<DensityMatrix> out = oracle::evolve_expm(l, DensityMatrix::fock(0, dim), times);
  double last = 0.0;
  for (const DensityMatrix& rho : out) {
    EXPECT_NEAR(rho.trace(), 1.0, 1e-10);
    EXPECT_GT(rho.mean_photon(), last);
    last = rho.mean_photon();
  }
}

TEST(Rk4, Preconditions) {
  const MasterEqParams p = mild();
  const DensityMatrix rho = DensityMatrix::fock(1, FockDim(8));
  EXPECT_THROW(oracle::evolve_rk4(p, rho, 0.1, 0.0), InvalidArgument);
  EXPECT_THROW(oracle::evolve_rk4(p, rho, 0.1, 1.0), InvalidArgument);
  EXPECT_THROW(oracle::evolve_rk4(p, rho, -0.1, 0.01), InvalidArgument);
}

TEST(Rk4, ReportsNoConvergence) {
  NumericPolicy tight;
  tight.abs_tol = 1e-300;
  tight.rk4_max_halvings = 1;
  EXPECT_THROW(oracle::evolve_rk4(mild(), DensityMatrix::fock(1, FockDim(8)), 0.5, 0.03, tight), NoConvergence);
}

TEST(Rk4, ZeroTemperatureDecay) {
  const FockDim dim(20);
  const MasterEqParams p = decay_params(2.0, 0.0, 0.0).params;
  const DensityMatrix rho0 = DensityMatrix::pure(coherent_state({1.0, 0.5}, dim).amplitudes);
  const DensityMatrix out = oracle::evolve_rk4(p, rho0, 0.6, 0.02);
  const DensityMatrix expected =
      DensityMatrix::pure(coherent_state(std::exp(-0.6) * Complex{1.0, 0.5}, dim).amplitudes);
  EXPECT_LE(trace_distance(out, expected), 1e-9);
}

}  // namespace
}  // namespace psme
