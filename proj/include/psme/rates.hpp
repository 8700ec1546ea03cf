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

namespace psme {

/// Couplings of the four Lindblad terms
///   d(rho)/dt = sum_k gamma_k L_k(a, a^dagger) rho
/// with L1 ~ decay, L2 ~ gain, L3/L4 the phase-sensitive pair. gamma4 is not
/// stored: Hermiticity of rho forces gamma4 = conj(gamma3).
struct MasterEqParams {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  Complex gamma3{0.0, 0.0};

  Complex gamma4() const { return std::conj(gamma3); }
  /// arg(gamma3).
  double phase() const { return std::arg(gamma3); }
  /// Throws InvalidArgument unless gamma1, gamma2 >= 0, gamma1 + gamma2 > 0
  /// and all values are finite.
  void validate() const;
  /// |gamma3|^2 <= gamma1 * gamma2 (complete positivity of the generator).
  bool is_cp() const;
};

/// xi = r exp(i varphi). mu = cosh r, nu = -sinh(r) exp(i varphi), so the
/// transformed mode is b = S^dagger a S = mu a + nu a^dagger.
struct SqueezeParams {
  double r = 0.0;
  double varphi = 0.0;
  double mu = 1.0;
  Complex nu{0.0, 0.0};

  Complex xi() const { return std::polar(r, varphi); }
};

/// Rates of the phase-insensitive equation in the squeezed frame.
/// kappa = gt1 - gt2 sets the relaxation rate.
struct TransformedRates {
  double gt1 = 0.0;
  double gt2 = 0.0;
  double kappa = 0.0;

  static TransformedRates from(double gt1, double gt2) { return {gt1, gt2, gt1 - gt2}; }
};

struct FrameTransform {
  SqueezeParams squeeze;
  TransformedRates rates;
  Warnings warnings;
};

/// Chooses the squeeze frame that removes the L3/L4 terms:
///   varphi = -arg(gamma3), tanh(2r) = 2|gamma3| / (gamma1 + gamma2).
/// Throws UnsqueezableParams when 2|gamma3| >= gamma1 + gamma2.
/// A NonCP warning is attached when |gamma3|^2 > gamma1 gamma2.
FrameTransform transform_params(const MasterEqParams& p);

/// Decay into a phase-sensitive reservoir:
///   gamma1 = g(n+1)/2, gamma2 = g n/2, gamma3 = -g conj(M)/2.
/// NonCP warning when |M| > sqrt(n(n+1)).
struct NamedParams {
  MasterEqParams params;
  Warnings warnings;
};
NamedParams decay_params(double gamma, double nbar, Complex m);

/// Phase-sensitive amplification: gamma1 = A n/2, gamma2 = A(n+1)/2,
/// gamma3 = -A conj(M)/2. Here gamma1 - gamma2 = -A/2 < 0.
NamedParams amplification_params(double gain, double nbar, Complex m);

/// Original-frame couplings whose squeeze frame has r = 0.7 (xi = 0.7 real),
/// gt2 = 1 and kappa = 1.
MasterEqParams figure1_params();

}  // namespace psme
