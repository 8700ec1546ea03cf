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

#include "psme/phasespace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "psme/propagator.hpp"

namespace psme {

namespace {

double factorial(std::size_t k) { return std::tgamma(static_cast<double>(k) + 1.0); }

}  // namespace

void GridSpec::validate() const {
  if (!(xmax > xmin) || !(ymax > ymin)) throw InvalidArgument("grid bounds must be increasing");
  if (nx < 2 || ny < 2) throw InvalidArgument("grid needs at least 2 points per axis");
}

double GridSpec::dx() const { return (xmax - xmin) / static_cast<double>(nx - 1); }
double GridSpec::dy() const { return (ymax - ymin) / static_cast<double>(ny - 1); }

double QGrid::normalization() const {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum * spec.cell_area();
}

QMoments QGrid::moments() const {
  QMoments m;
  double mass = 0.0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t j = 0; j < spec.ny; ++j) {
    const double y = spec.y(j);
    for (std::size_t i = 0; i < spec.nx; ++i) {
      const double x = spec.x(i);
      const double q = at(i, j);
      mass += q;
      sx += q * x;
      sy += q * y;
      sxx += q * x * x;
      syy += q * y * y;
      sxy += q * x * y;
    }
  }
  if (mass <= 0.0) return m;
  m.mean_x = sx / mass;
  m.mean_y = sy / mass;
  m.var_x = sxx / mass - m.mean_x * m.mean_x;
  m.var_y = syy / mass - m.mean_y * m.mean_y;
  m.cov_xy = sxy / mass - m.mean_x * m.mean_y;
  const double half_trace = 0.5 * (m.var_x + m.var_y);
  const double radius = std::hypot(0.5 * (m.var_x - m.var_y), m.cov_xy);
  m.major = half_trace + radius;
  m.minor = half_trace - radius;
  m.total_second_moment = (sxx + syy) * spec.cell_area();
  return m;
}

double QGrid::max_abs_difference(const QGrid& other) const {
  if (other.values.size() != values.size()) throw DimMismatch("Q grids have different shapes");
  double worst = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    worst = std::max(worst, std::abs(values[k] - other.values[k]));
  }
  return worst;
}

double q_direct(const DensityMatrix& rho, Complex beta, double* imag_residual) {
  const StateVector c = coherent_amplitudes(beta, rho.dim());
  const Complex value = c.dot(rho.matrix() * c);  // conj(c)^T rho c
  if (imag_residual) *imag_residual = std::abs(value.imag()) / std::numbers::pi;
  return value.real() / std::numbers::pi;
}

double g_coefficient(std::size_t n, std::size_t m, double r) {
  if (r < 0.0) throw InvalidArgument("g_coefficient expects r >= 0");
  if ((n + m) % 2 != 0) return 0.0;
  if (r == 0.0) return n == m ? 1.0 : 0.0;

  const double ch = std::cosh(r);
  const double half_tanh = 0.5 * std::tanh(r);
  const double x = -4.0 / (std::sinh(r) * std::sinh(r));
  const double root = std::sqrt(factorial(n) * factorial(m));

  if (n % 2 == 0) {
    const std::size_t hn = n / 2, hm = m / 2;
    double sum = 0.0;
    for (std::size_t l = 0; l <= std::min(hn, hm); ++l) {
      sum += std::pow(x, static_cast<double>(l)) /
             (factorial(2 * l) * factorial(hn - l) * factorial(hm - l));
    }
    const double sign = (hn % 2 == 0) ? 1.0 : -1.0;
    return sign * root / std::sqrt(ch) * std::pow(half_tanh, 0.5 * static_cast<double>(n + m)) *
           sum;
  }
  const std::size_t hn = (n - 1) / 2, hm = (m - 1) / 2;
  double sum = 0.0;
  for (std::size_t l = 0; l <= std::min(hn, hm); ++l) {
    sum += std::pow(x, static_cast<double>(l)) /
           (factorial(2 * l + 1) * factorial(hn - l) * factorial(hm - l));
  }
  const double sign = (hn % 2 == 0) ? 1.0 : -1.0;
  return sign * root / std::pow(ch, 1.5) *
         std::pow(half_tanh, 0.5 * static_cast<double>(n + m) - 1.0) * sum;
}

Complex overlap_beta_squeezed_number(Complex beta, std::size_t m, Complex xi, FockDim nmax,
                                     const NumericPolicy& policy) {
  if (m >= nmax.value()) throw InvalidArgument("m must be below the truncation");
  const Operator s = make_squeeze(xi, nmax, policy);
  const auto col = s.col(static_cast<Eigen::Index>(m));
  const double tail = col.tail(std::min<Eigen::Index>(4, col.size())).squaredNorm();
  if (tail > policy.abs_tol) {
    std::ostringstream msg;
    msg << "|" << m << ",xi> has weight " << tail << " on the top levels of N=" << nmax.value();
    throw BadTruncation(msg.str());
  }
  return coherent_amplitudes(beta, nmax).dot(col);
}

Complex overlap_beta_squeezed_number_series(Complex beta, std::size_t m, double r,
                                            std::size_t nmax) {
  const StateVector c = coherent_amplitudes(beta, FockDim(nmax));
  Complex sum(0.0, 0.0);
  for (std::size_t n = 0; n < nmax; ++n) {
    sum += std::conj(c(static_cast<Eigen::Index>(n))) * g_coefficient(n, m, r);
  }
  return sum;
}

QGrid q_evolved_series(const TransformedRates& rates, Complex xi, double t, const GridSpec& spec,
                       double tol, const NumericPolicy& policy) {
  spec.validate();
  const PropCoefficients c = coefficients(rates, t);
  const double q = c.c_plus;

  std::size_t terms = 1;
  if (q > 0.0) {
    terms = static_cast<std::size_t>(std::ceil(std::log(tol) / std::log(q)));
    terms = std::max<std::size_t>(terms, 1);
  }
  const double bx = std::max(std::abs(spec.xmin), std::abs(spec.xmax));
  const double by = std::max(std::abs(spec.ymin), std::abs(spec.ymax));
  const double radius = std::hypot(bx, by);
  const auto coherent_levels = static_cast<std::size_t>(std::ceil(radius * radius + 12.0 * radius + 30.0));
  const std::size_t levels = std::max({4 * (terms + 1), coherent_levels, std::size_t{32}});
  if (levels > 600) {
    throw BadTruncation("mixture series needs more than 600 Fock levels");
  }
  const FockDim dim(levels);
  const Operator s = make_squeeze(xi, dim, policy);
  const auto used = static_cast<Eigen::Index>(terms);
  const CMatrix columns = s.leftCols(used);

  Eigen::VectorXd weights(used);
  double w = c.weight;
  for (Eigen::Index k = 0; k < used; ++k) {
    weights(k) = w;
    w *= q;
  }

  QGrid grid;
  grid.spec = spec;
  grid.t = t;
  grid.values.resize(spec.nx * spec.ny);
  for (std::size_t j = 0; j < spec.ny; ++j) {
    for (std::size_t i = 0; i < spec.nx; ++i) {
      const StateVector amp = coherent_amplitudes(spec.beta(i, j), dim);
      const CVector overlaps = columns.adjoint() * amp;  // conj(<beta|m,xi>)
      grid.values[j * spec.nx + i] =
          weights.dot(overlaps.cwiseAbs2()) / std::numbers::pi;
    }
  }
  return grid;
}

QGrid q_grid(const DensityMatrix& rho, const GridSpec& spec, double t) {
  spec.validate();
  QGrid grid;
  grid.spec = spec;
  grid.t = t;
  grid.values.resize(spec.nx * spec.ny);
  for (std::size_t j = 0; j < spec.ny; ++j) {
    for (std::size_t i = 0; i < spec.nx; ++i) {
      grid.values[j * spec.nx + i] = q_direct(rho, spec.beta(i, j));
    }
  }
  return grid;
}

}  // namespace psme
