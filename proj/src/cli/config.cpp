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

#include "psme/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "psme/propagator.hpp"

namespace psme::cli {

using nlohmann::json;

namespace {

Complex parse_complex(const json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ConfigError(what + " must be a number or a [re, im] pair");
}

double number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ConfigError(where + "." + key + " must be a number");
  }
  return j.at(key).get<double>();
}

Complex optional_complex(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) return {0.0, 0.0};
  return parse_complex(j.at(key), where + "." + key);
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

void parse_params(const json& j, RunConfig& cfg) {
  if (!j.is_object()) throw ConfigError("params must be an object");
  if (j.contains("figure1")) {
    if (!j.at("figure1").is_boolean() || !j.at("figure1").get<bool>()) {
      throw ConfigError("params.figure1 must be true");
    }
    cfg.params = figure1_params();
    cfg.param_source = "figure1";
  } else if (j.contains("decay")) {
    const json& d = j.at("decay");
    NamedParams named = decay_params(number(d, "gamma", "params.decay"),
                                     number(d, "nbar", "params.decay"),
                                     optional_complex(d, "M", "params.decay"));
    cfg.params = named.params;
    cfg.param_warnings = std::move(named.warnings);
    cfg.param_source = "decay";
  } else if (j.contains("amplification")) {
    const json& a = j.at("amplification");
    NamedParams named = amplification_params(number(a, "A", "params.amplification"),
                                             number(a, "nbar", "params.amplification"),
                                             optional_complex(a, "M", "params.amplification"));
    cfg.params = named.params;
    cfg.param_warnings = std::move(named.warnings);
    cfg.param_source = "amplification";
  } else {
    cfg.params.gamma1 = number(j, "gamma1", "params");
    cfg.params.gamma2 = number(j, "gamma2", "params");
    cfg.params.gamma3 = optional_complex(j, "gamma3", "params");
    cfg.param_source = "raw";
  }
  if (j.contains("gamma4")) cfg.gamma4_override = parse_complex(j.at("gamma4"), "params.gamma4");
  cfg.params.validate();
}

InitialState parse_initial(const json& j) {
  InitialState s;
  std::string name;
  json body = json::object();
  if (j.is_string()) {
    name = j.get<std::string>();
  } else if (j.is_object() && j.size() == 1) {
    name = j.begin().key();
    body = j.begin().value();
  } else {
    throw ConfigError("initial_state must be a name or a single-key object");
  }
  const std::string where = "initial_state." + name;
  if (name == "vacuum") {
    s.kind = InitialState::Kind::Vacuum;
  } else if (name == "fock") {
    s.kind = InitialState::Kind::Fock;
    const double m = number(body, "m", where);
    if (m < 0 || m != std::floor(m)) throw ConfigError(where + ".m must be a nonnegative integer");
    s.m = static_cast<std::size_t>(m);
  } else if (name == "coherent") {
    s.kind = InitialState::Kind::Coherent;
    s.beta = optional_complex(body, "beta", where);
  } else if (name == "squeezed_vacuum") {
    s.kind = InitialState::Kind::SqueezedVacuum;
    s.xi = optional_complex(body, "xi", where);
  } else if (name == "squeezed_thermal") {
    s.kind = InitialState::Kind::SqueezedThermal;
    s.xi = optional_complex(body, "xi", where);
    s.nbar = number(body, "nbar", where);
    if (s.nbar < 0.0) throw ConfigError(where + ".nbar must be nonnegative");
  } else {
    throw ConfigError("unknown initial_state '" + name + "'");
  }
  return s;
}

GridSpec parse_grid(const json& j) {
  GridSpec g;
  g.xmin = j.value("xmin", g.xmin);
  g.xmax = j.value("xmax", g.xmax);
  g.ymin = j.value("ymin", g.ymin);
  g.ymax = j.value("ymax", g.ymax);
  g.nx = j.value("nx", g.nx);
  g.ny = j.value("ny", g.ny);
  try {
    g.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
  return g;
}

OutputSpec parse_output(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("path")) {
    throw ConfigError("each output needs 'kind' and 'path'");
  }
  const std::string kind = j.at("kind").get<std::string>();
  OutputSpec out{OutputSpec::Kind::QGrid, j.at("path").get<std::string>()};
  if (kind == "qgrid") {
    out.kind = OutputSpec::Kind::QGrid;
  } else if (kind == "moments") {
    out.kind = OutputSpec::Kind::Moments;
  } else if (kind == "densitymatrix") {
    out.kind = OutputSpec::Kind::DensityMatrix;
  } else if (kind == "validation") {
    out.kind = OutputSpec::Kind::Validation;
  } else {
    throw ConfigError("unknown output kind '" + kind + "'");
  }
  return out;
}

}  // namespace

DensityMatrix InitialState::build(FockDim dim, const NumericPolicy& policy) const {
  switch (kind) {
    case Kind::Vacuum:
      return DensityMatrix::fock(0, dim);
    case Kind::Fock:
      return DensityMatrix::fock(m, dim);
    case Kind::Coherent:
      return DensityMatrix::pure(coherent_state(beta, dim, policy).amplitudes);
    case Kind::SqueezedVacuum:
    case Kind::SqueezedThermal: {
      // Built in a larger space and cut back so the squeeze matrix is exact
      // on the retained levels.
      const FockDim work = squeeze_work_dim(dim, std::abs(xi));
      const Operator s = make_squeeze(xi, work, policy);
      CMatrix thermal = CMatrix::Zero(work.index(), work.index());
      const double q = nbar / (nbar + 1.0);
      double w = 1.0 / (nbar + 1.0);
      for (Eigen::Index k = 0; k < work.index(); ++k, w *= q) thermal(k, k) = w;
      CMatrix rho = (s * thermal * s.adjoint()).topLeftCorner(dim.index(), dim.index());
      const double kept = rho.trace().real();
      if (1.0 - kept > policy.norm_drift_tol) {
        std::ostringstream msg;
        msg << "initial squeezed state loses " << 1.0 - kept << " probability at N="
            << dim.value();
        throw BadTruncation(msg.str());
      }
      rho /= kept;
      return DensityMatrix::from_matrix(0.5 * (rho + rho.adjoint()));
    }
  }
  throw ConfigError("unknown initial state");
}

json InitialState::to_json() const {
  switch (kind) {
    case Kind::Vacuum:
      return "vacuum";
    case Kind::Fock:
      return {{"fock", {{"m", m}}}};
    case Kind::Coherent:
      return {{"coherent", {{"beta", complex_json(beta)}}}};
    case Kind::SqueezedVacuum:
      return {{"squeezed_vacuum", {{"xi", complex_json(xi)}}}};
    case Kind::SqueezedThermal:
      return {{"squeezed_thermal", {{"xi", complex_json(xi)}, {"nbar", nbar}}}};
  }
  return nullptr;
}

RunConfig RunConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig cfg;
  cfg.policy = NumericPolicy::from_env();
  try {
    if (!j.contains("params")) throw ConfigError("missing 'params'");
    parse_params(j.at("params"), cfg);

    if (j.contains("initial_state")) cfg.initial = parse_initial(j.at("initial_state"));

    if (j.contains("dim")) {
      const json& d = j.at("dim");
      if (!d.is_number_integer() || d.get<long long>() < 2) {
        throw ConfigError("dim must be an integer >= 2");
      }
      cfg.dim = d.get<std::size_t>();
    }

    if (!j.contains("times") || !j.at("times").is_array()) {
      throw ConfigError("'times' must be a list of nonnegative numbers");
    }
    for (const json& t : j.at("times")) {
      if (!t.is_number()) throw ConfigError("times must be numbers");
      cfg.times.push_back(t.get<double>());
    }
    if (cfg.times.empty()) throw ConfigError("'times' is empty");
    for (std::size_t k = 0; k < cfg.times.size(); ++k) {
      if (!(cfg.times[k] >= 0.0)) throw ConfigError("times must be >= 0");
      if (k > 0 && cfg.times[k] < cfg.times[k - 1]) throw ConfigError("times must be nondecreasing");
    }

    if (j.contains("grid")) cfg.grid = parse_grid(j.at("grid"));
    if (j.contains("outputs")) {
      for (const json& o : j.at("outputs")) cfg.outputs.push_back(parse_output(o));
    }
    if (j.contains("bench")) {
      const json& b = j.at("bench");
      if (b.contains("dims")) {
        cfg.bench_dims.clear();
        for (const json& d : b.at("dims")) {
          if (!d.is_number_integer() || d.get<long long>() < 2) {
            throw ConfigError("bench.dims entries must be integers >= 2");
          }
          cfg.bench_dims.push_back(d.get<std::size_t>());
        }
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return from_json(j);
}

RunConfig RunConfig::default_validation() {
  return from_json(json{
      {"params", {{"figure1", true}}},
      {"initial_state", "vacuum"},
      {"dim", 30},
      {"times", json::array({0.025, 0.05})},
  });
}

json provenance(const RunConfig& config) {
  json p;
  p["source"] = config.param_source;
  p["gamma1"] = config.params.gamma1;
  p["gamma2"] = config.params.gamma2;
  p["gamma3"] = complex_json(config.params.gamma3);
  p["gamma4"] = complex_json(config.gamma4_override.value_or(config.params.gamma4()));
  p["N"] = config.dim;
  try {
    const FrameTransform f = transform_params(config.params);
    p["r"] = f.squeeze.r;
    p["varphi"] = f.squeeze.varphi;
    p["gt1"] = f.rates.gt1;
    p["gt2"] = f.rates.gt2;
    p["kappa"] = f.rates.kappa;
  } catch (const UnsqueezableParams&) {
    p["r"] = nullptr;
  }
  return p;
}

}  // namespace psme::cli
