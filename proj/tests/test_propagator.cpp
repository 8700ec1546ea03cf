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
#include <random>

#include "psme/linalg.hpp"
#include "psme/oracle.hpp"
#include "psme/propagator.hpp"

namespace psme {
namespace {

MasterEqParams params(double g1, double g2, Complex g3) {
  MasterEqParams p;
  p.gamma1 = g1;
  p.gamma2 = g2;
  p.gamma3 = g3;
  return p;
}

DensityMatrix mixed_start(FockDim dim) {
  const CMatrix m = 0.6 * DensityMatrix::pure(coherent_state({0.5, -0.4}, dim).amplitudes).matrix() +
                    0.4 * DensityMatrix::fock(2, dim).matrix();
  return DensityMatrix::from_matrix(m);
}

const TransformedRates kWorked = TransformedRates::from(1.366025403784438647, 0.366025403784438647);

TEST(Coefficients, IdentityAtZero) {
  const PropCoefficients c = coefficients(kWorked, 0.0);
  EXPECT_EQ(c.gamma_t, 0.0);
  EXPECT_EQ(c.c_plus, 0.0);
  EXPECT_EQ(c.c3, 1.0);
  EXPECT_EQ(c.c_minus, 0.0);
  EXPECT_EQ(c.prefactor, 1.0);
}

TEST(Coefficients, WorkedExample) {
  const PropCoefficients c = coefficients(kWorked, 0.5);
  EXPECT_NEAR(c.gamma_t, 0.231372182785667828, 1e-15);
  EXPECT_NEAR(c.c_plus, 0.187897847637135053, 1e-15);
  EXPECT_NEAR(c.c3, std::exp(-0.5) / (1.0 + c.gamma_t), 1e-15);
  EXPECT_NEAR(c.weight, c.prefactor * c.c3, 1e-15);
  EXPECT_NEAR(c.c_minus, kWorked.gt1 * (1.0 - std::exp(-1.0)) / (1.0 + c.gamma_t), 1e-15);
}

TEST(Coefficients, ZeroTemperature) {
  const TransformedRates rates = TransformedRates::from(1.5, 0.0);
  for (double t : {0.1, 0.7, 3.0}) {
    const PropCoefficients c = coefficients(rates, t);
    EXPECT_EQ(c.c_plus, 0.0);
    EXPECT_NEAR(c.c_minus, -std::expm1(-2.0 * 1.5 * t), 1e-15);
  }
}

TEST(Coefficients, KappaZeroLimit) {
  const TransformedRates flat = TransformedRates::from(0.8, 0.8);
  const double t = 0.9;
  const PropCoefficients c = coefficients(flat, t);
  const double d = 1.0 + 2.0 * 0.8 * t;
  EXPECT_NEAR(c.c_plus, 2.0 * 0.8 * t / d, 1e-15);
  EXPECT_NEAR(c.c3, 1.0 / d, 1e-15);
  EXPECT_NEAR(c.c_minus, 2.0 * 0.8 * t / d, 1e-15);
  EXPECT_EQ(c.prefactor, 1.0);
  // Continuity across the series switch.
  const PropCoefficients near = coefficients({0.8 + 1e-9, 0.8, 1e-9}, t);
  EXPECT_NEAR(near.c_plus, c.c_plus, 1e-9);
  EXPECT_NEAR(near.c3, c.c3, 1e-9);
}

TEST(Coefficients, LargeTimeIsFinite) {
  const PropCoefficients c = coefficients(kWorked, 2000.0);
  EXPECT_NEAR(c.c_plus, 0.366025403784438647 / 1.366025403784438647, 1e-15);
  EXPECT_NEAR(c.weight, 1.0 / 1.366025403784438647, 1e-15);
  EXPECT_EQ(c.c3, 0.0);
}

TEST(Coefficients, Errors) {
  EXPECT_THROW(coefficients(kWorked, -0.1), InvalidArgument);
  EXPECT_THROW(coefficients(TransformedRates::from(0.5, 1.0), 0.1), UnsupportedRegime);
}

TEST(Disentangle, Values) {
  const DisentangleFunctions zero = disentangle_functions(TransformedRates::from(2.0, 1.0), 0.0);
  EXPECT_EQ(zero.f0, 0.0);
  EXPECT_EQ(zero.f1, 0.0);
  EXPECT_EQ(zero.f3, 0.0);
  const DisentangleFunctions f = disentangle_functions(TransformedRates::from(2.0, 1.0), 1.0);
  EXPECT_NEAR(f.f0, 0.541027086799887966, 1e-15);
  EXPECT_NEAR(f.f1, 0.231855279126061544, 1e-15);
  EXPECT_EQ(f.f1, f.f2);
  EXPECT_NEAR(f.f3, 1.376918739600336101, 1e-15);
  EXPECT_THROW(disentangle_functions(TransformedRates::from(1.0, 1.0), 1.0), UnsupportedRegime);
}

TEST(Primed, IdentityAtZero) {
  const DensityMatrix rho = mixed_start(FockDim(20));
  EXPECT_LE(trace_distance(propagate_primed(rho, kWorked, 0.0), rho), 1e-15);
}

TEST(Primed, VacuumBecomesGeometric) {
  const FockDim dim(40);
  for (double t : {0.2, 1.0, 5.0}) {
    const PropCoefficients c = coefficients(kWorked, t);
    const DensityMatrix rho = propagate_primed(DensityMatrix::fock(0, dim), kWorked, t);
    for (Eigen::Index m = 0; m < 10; ++m) {
      ASSERT_NEAR(rho.matrix()(m, m).real(), c.weight * std::pow(c.c_plus, m), 1e-14);
    }
    EXPECT_NEAR(rho.mean_photon(), c.gamma_t / kWorked.kappa, 1e-12);
  }
}

TEST(Primed, ZeroTemperatureCoherentDecay) {
  const FockDim dim(30);
  const TransformedRates rates = TransformedRates::from(1.0, 0.0);
  const DensityMatrix rho0 = DensityMatrix::pure(coherent_state({1.0, 0.0}, dim).amplitudes);
  for (double t : {0.3, 1.0, 2.5}) {
    const DensityMatrix expected =
        DensityMatrix::pure(coherent_state({std::exp(-t), 0.0}, dim).amplitudes);
    EXPECT_LE(trace_distance(propagate_primed(rho0, rates, t), expected), 1e-8);
  }
}

TEST(Primed, BoundaryPopulationIsBadTruncation) {
  EXPECT_THROW(propagate_primed(DensityMatrix::fock(0, FockDim(8)), kWorked, 10.0), BadTruncation);
}

TEST(Propagate, WithoutSqueezingEqualsPrimed) {
  const FockDim dim(24);
  const DensityMatrix rho = mixed_start(dim);
  const MasterEqParams p = params(kWorked.gt1, kWorked.gt2, 0.0);
  for (double t : {0.3, 1.2}) {
    EXPECT_LE(trace_distance(propagate(rho, p, t), propagate_primed(rho, kWorked, t)), 1e-13);
  }
}

TEST(Propagate, Properties) {
  const FockDim dim(30);
  const MasterEqParams p = params(1.5, 0.5, std::polar(0.5, 0.7));
  const AnalyticPropagator prop(p, dim);
  const DensityMatrix rho = mixed_start(dim);
  EXPECT_LE(trace_distance(prop.evolve(rho, 0.0), rho), 1e-12);
  for (double t : {0.25, 1.0, 2.0}) {
    const DensityMatrix out = prop.evolve(rho, t);
    EXPECT_NEAR(out.trace(), 1.0, 1e-8);
    EXPECT_GE(out.min_eigenvalue(), -1e-8);
    EXPECT_LE(out.boundary_population(), 1e-8);
  }
  const DensityMatrix two_step = prop.evolve(prop.evolve(rho, 0.4), 0.7);
  EXPECT_LE(trace_distance(two_step, prop.evolve(rho, 1.1)), 1e-8);
}

TEST(Propagate, Linearity) {
  const FockDim dim(24);
  const MasterEqParams p = params(1.2, 0.3, {0.2, 0.1});
  const AnalyticPropagator prop(p, dim);
  const DensityMatrix r1 = DensityMatrix::fock(1, dim);
  const DensityMatrix r2 = DensityMatrix::pure(coherent_state({0.3, 0.8}, dim).amplitudes);
  const double alpha = 0.3;
  const DensityMatrix mix = DensityMatrix::from_matrix(alpha * r1.matrix() + (1 - alpha) * r2.matrix());
  const CMatrix lhs = prop.evolve(mix, 0.8).matrix();
  const CMatrix rhs = alpha * prop.evolve(r1, 0.8).matrix() + (1 - alpha) * prop.evolve(r2, 0.8).matrix();
  EXPECT_LE(linalg::max_abs(lhs - rhs), 1e-10);
}

TEST(Propagate, MatchesOracle) {
  const FockDim dim(24);
  const MasterEqParams p = params(1.4, 0.1, std::polar(0.2, -1.2));
  const DensityMatrix rho = mixed_start(dim);
  const AnalyticPropagator prop(p, dim);
  const auto l = oracle::build_liouvillian(p, dim);
  for (double t : {0.2, 0.8}) {
    EXPECT_LE(trace_distance(prop.evolve(rho, t), oracle::evolve_expm(l, rho, t)), 1e-9);
  }
}

TEST(Propagate, DirectRouteAgreesWithFrameRoute) {
  const FockDim dim(16);
  const MasterEqParams p = params(1.0, 0.25, std::polar(0.3, 0.5));
  const AnalyticPropagator prop(p, dim);
  const DensityMatrix rho = DensityMatrix::pure(coherent_state({0.4, 0.2}, dim).amplitudes);
  for (double t : {0.1, 0.6}) {
    EXPECT_LE(trace_distance(prop.evolve(rho, t), prop.evolve_direct(rho, t)), 1e-10);
  }
}

TEST(Propagate, RefusesNetGain) {
  const MasterEqParams amp = amplification_params(1.0, 0.2, 0.1).params;
  try {
    AnalyticPropagator prop(amp, FockDim(10));
    FAIL() << "expected UnsupportedRegime";
  } catch (const UnsupportedRegime& e) {
    EXPECT_NE(std::string(e.what()).find("oracle"), std::string::npos);
  }
  EXPECT_THROW(AnalyticPropagator(params(1.0, 1.0, 1.0), FockDim(10)), UnsqueezableParams);
}

TEST(Propagate, Figure1MixtureWithRoomToSpare) {
  // The figure1 mixture carries ~3e-7 of its weight above level 60 at
  // kappa t = 0.5; 100 levels hold it.
  const FockDim dim(100);
  const MasterEqParams p = figure1_params();
  const FrameTransform f = transform_params(p);
  const DensityMatrix start = DensityMatrix::pure(squeezed_number_projection(0, {0.7, 0.0}, dim));
  const DensityMatrix rho = propagate(start, p, 0.5);
  EXPECT_LE(trace_distance(rho, squeezed_thermal_reference({0.7, 0.0}, f.rates, 0.5, dim)), 1e-8);
}

TEST(Reference, Limits) {
  const FockDim dim(40);
  const Complex xi{0.5, 0.2};
  const DensityMatrix at_zero = squeezed_thermal_reference(xi, kWorked, 0.0, dim);
  const DensityMatrix sv = DensityMatrix::pure(squeezed_number_projection(0, xi, dim));
  EXPECT_LE(trace_distance(at_zero, sv), 1e-12);

  const DensityMatrix thermal = squeezed_thermal_reference(0.0, kWorked, 1.0, dim);
  const PropCoefficients c = coefficients(kWorked, 1.0);
  EXPECT_NEAR(thermal.mean_photon(), c.gamma_t / kWorked.kappa, 1e-10);
  EXPECT_LE(linalg::max_abs(thermal.matrix() - CMatrix(thermal.matrix().diagonal().asDiagonal())), 0.0);

  const PropCoefficients late = coefficients(kWorked, 50.0);
  EXPECT_NEAR(late.c_plus, 0.267949192431122706, 1e-12);
  const DensityMatrix steady = squeezed_thermal_reference(0.0, kWorked, 50.0, dim);
  EXPECT_NEAR(steady.mean_photon(), 0.366025403784438647, 1e-10);
}

TEST(Reference, NeedsEnoughLevels) {
  NumericPolicy strict;
  strict.mixture_weight_tol = 1e-300;
  EXPECT_THROW(squeezed_thermal_reference(0.0, kWorked, 5.0, FockDim(3), strict), BadTruncation);
}

}  // namespace
}  // namespace psme
