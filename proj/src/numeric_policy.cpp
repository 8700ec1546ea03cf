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

#include "psme/numeric_policy.hpp"

#include <cstdlib>
#include <string>

namespace psme {

NumericPolicy NumericPolicy::from_env() {
  NumericPolicy policy;
  if (const char* raw = std::getenv("PSME_TOLERANCE")) {
    try {
      const double value = std::stod(raw);
      if (value > 0.0) policy.abs_tol = value;
    } catch (const std::exception&) {
      // Unparseable values leave the default in place.
    }
  }
  return policy;
}

}  // namespace psme
