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

#include <cstdio>
#include <sstream>

#include "psme/commands.hpp"

namespace psme::cli {

using nlohmann::json;

bool ValidationReport::pass() const {
  for (const CheckResult& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

json ValidationReport::to_json() const {
  json list = json::array();
  for (const CheckResult& c : checks) {
    json entry{{"name", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance},
               {"pass", c.pass}};
    if (!c.detail.empty()) entry["detail"] = c.detail;
    list.push_back(std::move(entry));
  }
  return {{"status", pass() ? "pass" : "fail"}, {"checks", std::move(list)}};
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void provenance_lines(std::ostringstream& os, const json& prov) {
  for (const auto& [key, value] : prov.items()) os << "# " << key << "=" << value.dump() << '\n';
}

}  // namespace

std::string format_qgrid_csv(const QGrid& grid, const json& prov) {
  std::ostringstream os;
  provenance_lines(os, prov);
  os << "# t=" << fmt17(grid.t) << '\n';
  for (const auto& [key, value] : grid.metadata) os << "# " << key << '=' << fmt17(value) << '\n';
  os << "x,y,q\n";
  const GridSpec& s = grid.spec;
  for (std::size_t j = 0; j < s.ny; ++j) {
    for (std::size_t i = 0; i < s.nx; ++i) {
      os << fmt17(s.x(i)) << ',' << fmt17(s.y(j)) << ',' << fmt17(grid.at(i, j)) << '\n';
    }
  }
  return os.str();
}

}  // namespace psme::cli
