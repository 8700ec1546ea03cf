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

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "psme/errors.hpp"

namespace psme {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Dense N x N matrix acting on the truncated Fock space (a, a^dagger, S(xi), ...).
using Operator = CMatrix;
/// Amplitudes in the Fock basis |0>, ..., |N-1>.
using StateVector = CVector;

/// Number of retained Fock levels |0>...|N-1>. Always at least 2.
class FockDim {
 public:
  explicit FockDim(std::size_t n) : n_(n) {
    if (n < 2) {
      throw InvalidArgument("Fock dimension must be >= 2, got " + std::to_string(n));
    }
  }

  std::size_t value() const { return n_; }
  Eigen::Index index() const { return static_cast<Eigen::Index>(n_); }

  friend bool operator==(FockDim, FockDim) = default;

 private:
  std::size_t n_;
};

}  // namespace psme
