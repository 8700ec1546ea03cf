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

#include <string>
#include <utility>
#include <vector>

#include "psme/fock.hpp"
#include "psme/numeric_policy.hpp"
#include "psme/rates.hpp"

namespace psme {

/// Regular lattice of coherent-state labels beta = x + i y, endpoints included.
struct GridSpec {
  double xmin = -4.0;
  double xmax = 4.0;
  double ymin = -4.0;
  double ymax = 4.0;
  std::size_t nx = 81;
  std::size_t ny = 81;

  void validate() const;
  double dx() const;
  double dy() const;
  double x(std::size_t i) const {
    return xmin + (xmax - xmin) * static_cast<double>(i) / static_cast<double>(nx - 1);
  }
  double y(std::size_t j) const {
    return ymin + (ymax - ymin) * static_cast<double>(j) / static_cast<double>(ny - 1);
  }
  Complex beta(std::size_t i, std::size_t j) const { return {x(i), y(j)}; }
  double cell_area() const { return dx() * dy(); }
};

/// Principal second moments of a Q grid, taken about its mean.
struct QMoments {
  double mean_x = 0.0;
  double mean_y = 0.0;
  double var_x = 0.0;
  double var_y = 0.0;
  double cov_xy = 0.0;
  double major = 0.0;   // larger eigenvalue of the covariance
  double minor = 0.0;   // smaller eigenvalue
  double total_second_moment = 0.0;  // sum |beta|^2 Q dA

  double anisotropy() const { return minor > 0.0 ? major / minor : 0.0; }
};

/// Q values on a GridSpec, stored row-major with x fastest: index j * nx + i.
struct QGrid {
  GridSpec spec;
  std::vector<double> values;
  double t = 0.0;
  std::vector<std::pair<std::string, double>> metadata;

  double at(std::size_t i, std::size_t j) const { return values[j * spec.nx + i]; }
  /// Riemann sum times cell area; 1 when the grid covers the state.
  double normalization() const;
  QMoments moments() const;
  double max_abs_difference(const QGrid& other) const;
};

/// Re <beta|rho|beta> / pi. Exact for a rho supported on the N retained
/// levels: the coherent amplitudes are not renormalized, so large |beta| is
/// fine. The discarded imaginary part goes to `imag_residual` when non-null.
double q_direct(const DensityMatrix& rho, Complex beta, double* imag_residual = nullptr);

/// <n|S(r)|m> for real r > 0 from the closed-form double-factorial series.
/// Zero when n and m have different parity.
double g_coefficient(std::size_t n, std::size_t m, double r);

/// <beta|m,xi> = sum_n conj(<n|beta>) <n|S(xi)|m> with S built in `nmax`
/// levels. Throws BadTruncation when column m of S still has weight above
/// `policy.abs_tol` on its top four levels.
Complex overlap_beta_squeezed_number(Complex beta, std::size_t m, Complex xi, FockDim nmax,
                                     const NumericPolicy& policy = {});

/// Same overlap from g_coefficient (real xi only), for cross-checking.
Complex overlap_beta_squeezed_number_series(Complex beta, std::size_t m, double r,
                                           std::size_t nmax);

/// Q of the evolved squeezed vacuum from the mixture series
///   Q = (1/pi) kappa/(kappa+Gamma) sum_m [Gamma/(kappa+Gamma)]^m |<beta|m,xi>|^2,
/// truncated once the geometric weight reaches 1 - tol.
QGrid q_evolved_series(const TransformedRates& rates, Complex xi, double t, const GridSpec& spec,
                       double tol = 1e-12, const NumericPolicy& policy = {});

/// q_direct over every grid point.
QGrid q_grid(const DensityMatrix& rho, const GridSpec& spec, double t = 0.0);

}  // namespace psme
