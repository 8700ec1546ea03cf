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

#include "psme/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "psme/linalg.hpp"

namespace psme {

namespace {

constexpr double kSmallKappaT = 1e-6;

// Powers base^0 .. base^(n-1).
std::vector<double> powers(double base, Eigen::Index n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  double v = 1.0;
  for (auto& p : out) {
    p = v;
    v *= base;
  }
  return out;
}

// exp(c_plus L+) c3^{L3} exp(c_minus L-) with mode a, times e^{kappa t}.
CMatrix primed_core(const CMatrix& rho, const PropCoefficients& c, const NumericPolicy& policy) {
  const Eigen::Index n = rho.rows();

  CMatrix x = rho;
  if (c.c_minus != 0.0) {
    CMatrix term = rho;
    for (Eigen::Index k = 1; k < n; ++k) {
      term = lower_both(term) * (c.c_minus / static_cast<double>(k));
      x += term;
      if (linalg::max_abs(term) < policy.series_term_tol) break;
    }
  }

  const std::vector<double> pw = powers(c.c3, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      x(i, j) *= c.weight * pw[static_cast<std::size_t>(i)] * pw[static_cast<std::size_t>(j)];
    }
  }

  if (c.c_plus == 0.0) return x;
  CMatrix out = x;
  CMatrix term = x;
  for (Eigen::Index k = 1; k <= 4 * n; ++k) {
    term = raise_both(term) * (c.c_plus / static_cast<double>(k));
    out += term;
    if (linalg::max_abs(term) < policy.series_term_tol) break;
  }
  return out;
}

DensityMatrix settle(CMatrix m, double input_trace, const NumericPolicy& policy) {
  m = linalg::hermitian_part(m);
  const Eigen::Index n = m.rows();
  const double boundary = m(n - 1, n - 1).real();
  if (boundary > policy.boundary_population_tol) {
    std::ostringstream msg;
    msg << "evolved state has population " << boundary << " on level N-1 = " << n - 1
        << "; increase the Fock dimension";
    throw BadTruncation(msg.str());
  }
  const double tr = m.trace().real();
  const double drift = std::abs(tr - input_trace);
  if (drift > policy.norm_drift_tol * std::max(1.0, std::abs(input_trace))) {
    std::ostringstream msg;
    msg << "trace drifted from " << input_trace << " to " << tr;
    throw NormDrift(msg.str());
  }
  if (tr != 0.0 && input_trace != 0.0) m *= input_trace / tr;
  return DensityMatrix::from_matrix(std::move(m));
}

}  // namespace

PropCoefficients coefficients(const TransformedRates& rates, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("time must be nonnegative");
  const double kappa = rates.kappa;
  if (kappa < 0.0) {
    throw UnsupportedRegime(
        "kappa = gt1 - gt2 < 0 (net gain): the closed-form propagator is singular; "
        "use the Liouvillian oracle instead");
  }
  const double kt = kappa * t;
  // g = (1 - e^{-2 kappa t}) / kappa, so Gamma = gt2 kappa g.
  double g;
  if (std::abs(kt) < kSmallKappaT) {
    g = 2.0 * t * (1.0 - kt + (2.0 / 3.0) * kt * kt);
  } else {
    g = -std::expm1(-2.0 * kt) / kappa;
  }
  const double denom = 1.0 + rates.gt2 * g;
  if (!(denom > 0.0)) {
    throw UnsupportedRegime("kappa + Gamma(t) <= 0: closed-form propagator is singular");
  }

  PropCoefficients c;
  c.t = t;
  c.gamma_t = rates.gt2 * kappa * g;
  c.c_plus = rates.gt2 * g / denom;
  c.c3 = std::exp(-kt) / denom;
  c.c_minus = rates.gt1 * g / denom;
  c.prefactor = std::exp(kt);
  c.weight = 1.0 / denom;
  return c;
}

DisentangleFunctions disentangle_functions(const TransformedRates& rates, double t) {
  if (!(rates.kappa > 0.0)) {
    throw UnsupportedRegime("disentangling functions need kappa > 0");
  }
  const PropCoefficients c = coefficients(rates, t);
  const double log_ratio = std::log1p(c.gamma_t / rates.kappa);
  DisentangleFunctions f;
  f.f0 = (rates.kappa * t + log_ratio) / (rates.gt1 + rates.gt2);
  f.f1 = 0.5 * c.c_plus;
  f.f2 = f.f1;
  f.f3 = 2.0 * rates.gt2 * t - log_ratio;
  return f;
}

DensityMatrix propagate_primed(const DensityMatrix& rho0, const TransformedRates& rates, double t,
                               const NumericPolicy& policy) {
  const PropCoefficients c = coefficients(rates, t);
  return settle(primed_core(rho0.matrix(), c, policy), rho0.trace(), policy);
}

AnalyticPropagator::AnalyticPropagator(const MasterEqParams& params, FockDim dim,
                                       const NumericPolicy& policy)
    : params_(params),
      frame_(transform_params(params)),
      dim_(dim),
      work_dim_(squeeze_work_dim(dim, frame_.squeeze.r)),
      policy_(policy) {
  if (frame_.rates.kappa < 0.0) {
    std::ostringstream msg;
    msg << "kappa = " << frame_.rates.kappa
        << " < 0 (net amplification): the closed-form propagator is refused; "
           "use the Liouvillian oracle (evolve_expm or evolve_rk4)";
    throw UnsupportedRegime(msg.str());
  }
  squeeze_ = make_squeeze(frame_.squeeze.xi(), work_dim_, policy_);
}

DensityMatrix AnalyticPropagator::finish(const CMatrix& work_result, double input_trace) const {
  return settle(work_result.topLeftCorner(dim_.index(), dim_.index()), input_trace, policy_);
}

DensityMatrix AnalyticPropagator::evolve(const DensityMatrix& rho0, double t) const {
  if (rho0.dim() != dim_) throw DimMismatch("initial state dimension differs from propagator");
  const PropCoefficients c = coefficients(frame_.rates, t);
  const CMatrix big = rho0.embedded(work_dim_).matrix();
  const CMatrix primed = linalg::hermitian_part(squeeze_.adjoint() * big * squeeze_);
  const CMatrix evolved = primed_core(primed, c, policy_);
  return finish(squeeze_ * evolved * squeeze_.adjoint(), rho0.trace());
}

DensityMatrix AnalyticPropagator::evolve_direct(const DensityMatrix& rho0, double t) const {
  if (rho0.dim() != dim_) throw DimMismatch("initial state dimension differs from propagator");
  const PropCoefficients c = coefficients(frame_.rates, t);
  const Eigen::Index w = work_dim_.index();
  const Operator a = make_annihilation(work_dim_);
  const Operator b = squeeze_ * a * squeeze_.adjoint();
  const Operator bd = b.adjoint();

  CMatrix x = rho0.embedded(work_dim_).matrix();
  if (c.c_minus != 0.0) {
    CMatrix term = x;
    for (Eigen::Index k = 1; k <= 4 * w; ++k) {
      term = (c.c_minus / static_cast<double>(k)) * (b * term * bd);
      x += term;
      if (linalg::max_abs(term) < policy_.series_term_tol) break;
    }
  }

  // c3^{b+b} = S c3^{a+a} S+.
  const std::vector<double> pw = powers(c.c3, w);
  CMatrix diag = CMatrix::Zero(w, w);
  for (Eigen::Index k = 0; k < w; ++k) diag(k, k) = pw[static_cast<std::size_t>(k)];
  const CMatrix c3_number = squeeze_ * diag * squeeze_.adjoint();
  x = c.weight * (c3_number * x * c3_number);

  if (c.c_plus != 0.0) {
    CMatrix out = x;
    CMatrix term = x;
    for (Eigen::Index k = 1; k <= 4 * w; ++k) {
      term = (c.c_plus / static_cast<double>(k)) * (bd * term * b);
      out += term;
      if (linalg::max_abs(term) < policy_.series_term_tol) break;
    }
    x = std::move(out);
  }
  return finish(x, rho0.trace());
}

DensityMatrix propagate(const DensityMatrix& rho0, const MasterEqParams& p, double t,
                        const NumericPolicy& policy) {
  return AnalyticPropagator(p, rho0.dim(), policy).evolve(rho0, t);
}

DensityMatrix squeezed_thermal_reference(Complex xi, const TransformedRates& rates, double t,
                                         FockDim dim, const NumericPolicy& policy) {
  const PropCoefficients c = coefficients(rates, t);
  const FockDim work = squeeze_work_dim(dim, std::abs(xi));
  const Operator s = make_squeeze(xi, work, policy);
  const Eigen::Index n = dim.index();

  CMatrix rho = CMatrix::Zero(n, n);
  double weight = c.weight;  // kappa / (kappa + Gamma)
  double cumulative = 0.0;
  for (Eigen::Index m = 0; m < work.index(); ++m) {
    const CVector v = s.col(m).head(n);
    rho += weight * (v * v.adjoint());
    cumulative += weight;
    if (cumulative >= 1.0 - policy.mixture_weight_tol) {
      return DensityMatrix::from_matrix(linalg::hermitian_part(rho));
    }
    weight *= c.c_plus;
  }
  std::ostringstream msg;
  msg << "geometric mixture needs more than " << work.value() << " squeezed number states";
  throw BadTruncation(msg.str());
}

}  // namespace psme
