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

#include "psme/rates.hpp"

#include <cmath>
#include <sstream>

namespace psme {

void MasterEqParams::validate() const {
  if (!std::isfinite(gamma1) || !std::isfinite(gamma2) || !std::isfinite(gamma3.real()) ||
      !std::isfinite(gamma3.imag())) {
    throw InvalidArgument("master-equation rates must be finite");
  }
  if (gamma1 < 0.0 || gamma2 < 0.0) {
    throw InvalidArgument("gamma1 and gamma2 must be nonnegative");
  }
  if (!(gamma1 + gamma2 > 0.0)) {
    throw InvalidArgument("gamma1 + gamma2 must be positive");
  }
}

bool MasterEqParams::is_cp() const { return std::norm(gamma3) <= gamma1 * gamma2; }

FrameTransform transform_params(const MasterEqParams& p) {
  p.validate();
  const double sum = p.gamma1 + p.gamma2;
  const double g3 = std::abs(p.gamma3);
  const double ratio = 2.0 * g3 / sum;
  if (!(ratio < 1.0)) {
    std::ostringstream msg;
    msg << "2|gamma3|/(gamma1+gamma2) = " << ratio << " >= 1: no squeeze frame exists";
    throw UnsqueezableParams(msg.str());
  }

  FrameTransform out;
  SqueezeParams& sq = out.squeeze;
  sq.r = 0.5 * std::atanh(ratio);
  sq.varphi = g3 > 0.0 ? -std::arg(p.gamma3) : 0.0;
  sq.mu = std::cosh(sq.r);
  sq.nu = -std::sinh(sq.r) * std::polar(1.0, sq.varphi);

  // With varphi = -phi every cross term mu nu |g3| e^{i phi} collapses to
  // -|g3| sinh(r) cosh(r); the pair of them gives -|g3| sinh(2r).
  const double cross = g3 * std::sinh(2.0 * sq.r);
  const double nu2 = std::norm(sq.nu);
  const double mu2 = sq.mu * sq.mu;
  const double gt1 = p.gamma1 * mu2 + p.gamma2 * nu2 - cross;
  const double gt2 = p.gamma1 * nu2 + p.gamma2 * mu2 - cross;
  out.rates = TransformedRates::from(gt1, gt2);

  if (!p.is_cp()) {
    std::ostringstream msg;
    msg << "|gamma3|^2 = " << std::norm(p.gamma3) << " exceeds gamma1*gamma2 = "
        << p.gamma1 * p.gamma2 << "; evolution is not completely positive (gt2 = " << gt2
        << ")";
    out.warnings.push_back({WarningKind::NonCP, msg.str()});
  }
  return out;
}

NamedParams decay_params(double gamma, double nbar, Complex m) {
  if (!(gamma > 0.0)) throw InvalidArgument("decay rate must be positive");
  if (!(nbar >= 0.0)) throw InvalidArgument("nbar must be nonnegative");
  NamedParams out;
  out.params.gamma1 = gamma * (nbar + 1.0) / 2.0;
  out.params.gamma2 = gamma * nbar / 2.0;
  out.params.gamma3 = -gamma * std::conj(m) / 2.0;
  if (std::abs(m) > std::sqrt(nbar * (nbar + 1.0))) {
    out.warnings.push_back(
        {WarningKind::NonCP, "|M| exceeds sqrt(nbar(nbar+1)); reservoir is not physical"});
  }
  return out;
}

NamedParams amplification_params(double gain, double nbar, Complex m) {
  if (!(gain > 0.0)) throw InvalidArgument("gain must be positive");
  if (!(nbar >= 0.0)) throw InvalidArgument("nbar must be nonnegative");
  NamedParams out;
  out.params.gamma1 = gain * nbar / 2.0;
  out.params.gamma2 = gain * (nbar + 1.0) / 2.0;
  out.params.gamma3 = -gain * std::conj(m) / 2.0;
  if (std::abs(m) > std::sqrt(nbar * (nbar + 1.0))) {
    out.warnings.push_back(
        {WarningKind::NonCP, "|M| exceeds sqrt(nbar(nbar+1)); reservoir is not physical"});
  }
  return out;
}

MasterEqParams figure1_params() {
  // Invert the frame map for r = 0.7, gt1 = 2, gt2 = 1:
  //   gamma1 + gamma2 = (gt1 + gt2) cosh(2r), gamma1 - gamma2 = gt1 - gt2,
  //   2|gamma3| = (gamma1 + gamma2) tanh(2r), arg(gamma3) = 0 so that xi = +0.7.
  constexpr double two_r = 1.4;
  constexpr double kappa = 1.0;
  const double sum = 3.0 * std::cosh(two_r);
  MasterEqParams p;
  p.gamma1 = 0.5 * (sum + kappa);
  p.gamma2 = 0.5 * (sum - kappa);
  p.gamma3 = Complex(0.5 * sum * std::tanh(two_r), 0.0);
  return p;
}

}  // namespace psme
