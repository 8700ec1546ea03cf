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

#include <stdexcept>
#include <string>
#include <vector>

namespace psme {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The Fock truncation is too small for the requested state or operator.
class BadTruncation : public Error {
 public:
  using Error::Error;
};

class DimMismatch : public Error {
 public:
  using Error::Error;
};

/// 2|gamma3| >= gamma1 + gamma2: no real squeeze frame removes the phase-sensitive terms.
class UnsqueezableParams : public Error {
 public:
  using Error::Error;
};

/// The closed-form propagator is not defined for these rates (kappa < 0).
class UnsupportedRegime : public Error {
 public:
  using Error::Error;
};

class NormDrift : public Error {
 public:
  using Error::Error;
};

class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

enum class WarningKind {
  NonCP,        // parameters violate |gamma3|^2 <= gamma1 * gamma2
  EdgeSupport,  // input has weight on the top Fock levels
};

struct Warning {
  WarningKind kind;
  std::string message;
};

using Warnings = std::vector<Warning>;

inline bool has_warning(const Warnings& ws, WarningKind kind) {
  for (const auto& w : ws) {
    if (w.kind == kind) return true;
  }
  return false;
}

}  // namespace psme
