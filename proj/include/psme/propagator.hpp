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

#include "psme/fock.hpp"
#include "psme/numeric_policy.hpp"
#include "psme/rates.hpp"

namespace psme {

/// Scalar coefficients of the factored propagator
///
///   rho(t) = e^{kappa t} exp(c_plus L+) c3^{L3} exp(c_minus L-) rho(0)
///
/// with Gamma(t) = gt2 (1 - e^{-2 kappa t}).
struct PropCoefficients {
  double t = 0.0;
  double gamma_t = 0.0;    // Gamma(t)
  double c_plus = 0.0;     // Gamma / (kappa + Gamma)
  double c3 = 1.0;         // kappa e^{-kappa t} / (kappa + Gamma)
  double c_minus = 0.0;    // gt1 (1 - e^{-2 kappa t}) / (kappa + Gamma)
  double prefactor = 1.0;  // e^{kappa t}
  /// prefactor * c3 = kappa / (kappa + Gamma); kept separately so large
  /// kappa t never overflows.
  double weight = 1.0;
};

/// Throws UnsupportedRegime for kappa < 0 and InvalidArgument for t < 0.
/// kappa = 0 is handled through the exact limit Gamma/kappa -> 2 gt2 t.
PropCoefficients coefficients(const TransformedRates& rates, double t);

/// Disentangling functions of the ordered-exponential ansatz
///   f0 = [kappa t + ln((kappa + Gamma)/kappa)] / (gt1 + gt2),
///   f1 = f2 = Gamma / (2 (kappa + Gamma)),
///   f3 = 2 gt2 t - ln((kappa + Gamma)/kappa).
/// Reference values only; propagation uses PropCoefficients.
struct DisentangleFunctions {
  double f0 = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  double f3 = 0.0;
};

/// Requires kappa > 0.
DisentangleFunctions disentangle_functions(const TransformedRates& rates, double t);

/// Phase-insensitive evolution d(rho)/dt = (gt1 L1 + gt2 L2) rho in the
/// given Fock space, via the factored propagator with mode a.
///
/// The L- factor is a finite sum, c3^{L3} multiplies entry (n, m) by
/// c3^{n+m+1}, and the L+ series stops when a term drops below
/// `policy.series_term_tol` (or after 4N terms). Throws BadTruncation when
/// rho_{N-1,N-1} of the result exceeds `policy.boundary_population_tol` and
/// NormDrift when the trace moved by more than `policy.norm_drift_tol`;
/// smaller drifts are renormalized away.
DensityMatrix propagate_primed(const DensityMatrix& rho0, const TransformedRates& rates, double t,
                               const NumericPolicy& policy = {});

/// Closed-form solution of the full phase-sensitive equation.
///
/// Owns the squeeze frame and the squeeze matrix for one parameter set and
/// Fock dimension; evolve() is const and may be called concurrently.
class AnalyticPropagator {
 public:
  /// Throws UnsqueezableParams, or UnsupportedRegime when kappa < 0.
  AnalyticPropagator(const MasterEqParams& params, FockDim dim, const NumericPolicy& policy = {});

  const MasterEqParams& params() const { return params_; }
  const FrameTransform& frame() const { return frame_; }
  FockDim dim() const { return dim_; }
  FockDim work_dim() const { return work_dim_; }

  /// rho(t) = S rho'(t) S+, with rho'(0) = S+ rho(0) S evolved by propagate_primed.
  /// The frame change happens in squeeze_work_dim(N, r) levels and the result
  /// is cut back to N.
  DensityMatrix evolve(const DensityMatrix& rho0, double t) const;

  /// The same propagator applied directly in the original frame, with the
  /// rotated mode S a S+ in place of a. Roundoff in the L- series grows
  /// like (1 + c_minus)^N here, so this path is only a cross-check for
  /// small dimensions (N <= 20).
  DensityMatrix evolve_direct(const DensityMatrix& rho0, double t) const;

 private:
  DensityMatrix finish(const CMatrix& work_result, double input_trace) const;

  MasterEqParams params_;
  FrameTransform frame_;
  FockDim dim_;
  FockDim work_dim_;
  NumericPolicy policy_;
  Operator squeeze_;  // S(xi) in the working space
};

/// One-shot convenience over AnalyticPropagator::evolve.
DensityMatrix propagate(const DensityMatrix& rho0, const MasterEqParams& p, double t,
                        const NumericPolicy& policy = {});

/// kappa/(kappa+Gamma) sum_m [Gamma/(kappa+Gamma)]^m |m,xi><m,xi|, the
/// evolved squeezed vacuum when xi is the frame's squeeze parameter.
/// The series stops once the cumulative weight reaches 1 - mixture_weight_tol;
/// BadTruncation if that needs more levels than the working space has.
DensityMatrix squeezed_thermal_reference(Complex xi, const TransformedRates& rates, double t,
                                         FockDim dim, const NumericPolicy& policy = {});

}  // namespace psme
