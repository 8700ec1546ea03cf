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

#include "psme/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "psme/linalg.hpp"
#include "psme/oracle.hpp"
#include "psme/propagator.hpp"
#include "psme/superops.hpp"

namespace psme::cli {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// "{index}" and "{t}" are substituted; otherwise "_t<index>" goes before the
// extension when there is more than one time.
std::string output_path(const std::string& pattern, std::size_t index, double t,
                        std::size_t count) {
  std::string path = pattern;
  bool substituted = false;
  auto replace = [&](const std::string& key, const std::string& value) {
    for (std::size_t pos; (pos = path.find(key)) != std::string::npos;) {
      path.replace(pos, key.size(), value);
      substituted = true;
    }
  };
  replace("{index}", std::to_string(index));
  std::ostringstream ts;
  ts << t;
  replace("{t}", ts.str());
  if (substituted || count == 1) return path;
  const std::size_t slash = path.find_last_of('/');
  const std::size_t dot = path.find_last_of('.');
  const std::string suffix = "_t" + std::to_string(index);
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
  if (!out) throw Error("write failed for " + path);
}

// Quadratures x = (a + a+)/2, p = (a - a+)/(2i), matching beta = x + i y on
// the Q grid. Second moments use [a, a+] = 1.
json moments_json(const DensityMatrix& rho, double t) {
  const FockDim dim = rho.dim();
  const Operator a = make_annihilation(dim);
  const Complex mean_a = rho.mean_annihilation();
  const Complex mean_a2 = (rho.matrix() * a * a).trace();
  const double n = rho.mean_photon();
  const double x2 = (2.0 * mean_a2.real() + 2.0 * n + 1.0) / 4.0;
  const double p2 = (-2.0 * mean_a2.real() + 2.0 * n + 1.0) / 4.0;
  return {{"t", t},
          {"trace", rho.trace()},
          {"mean_n", n},
          {"mean_a", complex_json(mean_a)},
          {"var_x", x2 - mean_a.real() * mean_a.real()},
          {"var_p", p2 - mean_a.imag() * mean_a.imag()},
          {"min_eigenvalue", rho.min_eigenvalue()},
          {"boundary_population", rho.boundary_population()}};
}

json matrix_json(const DensityMatrix& rho, double t) {
  const CMatrix& m = rho.matrix();
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json rr = json::array();
    json ri = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ri.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return {{"t", t}, {"re", std::move(re)}, {"im", std::move(im)}};
}

void log_warnings(const Warnings& ws, std::ostream& log) {
  for (const Warning& w : ws) log << "warning: " << w.message << '\n';
}

// Random density matrix supported on the lowest `support` levels of `dim`.
CMatrix random_interior_state(FockDim dim, std::size_t support, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const auto k = static_cast<Eigen::Index>(std::min(support, dim.value()));
  CMatrix g(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) g(i, j) = {gauss(rng), gauss(rng)};
  }
  CMatrix rho = CMatrix::Zero(dim.index(), dim.index());
  rho.topLeftCorner(k, k) = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

CheckResult make_check(std::string name, double residual, double tolerance, std::string detail = {}) {
  return {std::move(name), residual, tolerance, residual <= tolerance, std::move(detail)};
}

CheckResult failed_check(std::string name, double tolerance, const std::exception& e) {
  return {std::move(name), kNaN, tolerance, false, e.what()};
}

template <class Fn>
void guarded(ValidationReport& report, const std::string& name, double tol, Fn&& fn) {
  try {
    report.checks.push_back(fn());
  } catch (const std::exception& e) {
    report.checks.push_back(failed_check(name, tol, e));
  }
}

int exit_for(const std::exception& e, std::ostream& log) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const InvalidArgument*>(&e)) {
    log << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  if (dynamic_cast<const UnsupportedRegime*>(&e) || dynamic_cast<const UnsqueezableParams*>(&e)) {
    log << "unsupported regime: " << e.what() << '\n';
    return kUnsupportedRegime;
  }
  if (dynamic_cast<const BadTruncation*>(&e) || dynamic_cast<const NormDrift*>(&e)) {
    log << "truncation error: " << e.what() << '\n';
    return kBadTruncation;
  }
  log << "error: " << e.what() << '\n';
  return kFailure;
}

}  // namespace

int cmd_evolve(const RunConfig& config, std::ostream& log) {
  try {
    log_warnings(config.param_warnings, log);
    if (config.gamma4_override && *config.gamma4_override != config.params.gamma4()) {
      log << "warning: gamma4 override is ignored by the analytic path (it uses conj(gamma3))\n";
    }
    const FockDim dim(config.dim);
    const AnalyticPropagator prop(config.params, dim, config.policy);
    log_warnings(prop.frame().warnings, log);
    const DensityMatrix rho0 = config.initial.build(dim, config.policy);
    const json prov = provenance(config);

    json moments = json::array();
    json matrices = json::array();
    const std::size_t count = config.times.size();
    for (std::size_t k = 0; k < count; ++k) {
      const double t = config.times[k];
      const DensityMatrix rho = prop.evolve(rho0, t);
      log << "t=" << t << " trace=" << rho.trace() << " <n>=" << rho.mean_photon() << '\n';
      moments.push_back(moments_json(rho, t));
      matrices.push_back(matrix_json(rho, t));
      for (const OutputSpec& out : config.outputs) {
        if (out.kind != OutputSpec::Kind::QGrid) continue;
        const GridSpec spec = config.grid.value_or(GridSpec{});
        const QGrid grid = q_grid(rho, spec, t);
        const std::string path = output_path(out.path, k, t, count);
        write_file(path, format_qgrid_csv(grid, prov));
        log << "wrote " << path << '\n';
      }
    }
    for (const OutputSpec& out : config.outputs) {
      if (out.kind == OutputSpec::Kind::Moments) {
        write_file(out.path, json{{"provenance", prov}, {"moments", moments}}.dump(2) + "\n");
      } else if (out.kind == OutputSpec::Kind::DensityMatrix) {
        write_file(out.path, json{{"provenance", prov}, {"states", matrices}}.dump(2) + "\n");
      } else {
        continue;
      }
      log << "wrote " << out.path << '\n';
    }
    return kOk;
  } catch (const std::exception& e) {
    return exit_for(e, log);
  }
}

ValidationReport build_validation_report(const RunConfig& config) {
  ValidationReport report;
  const NumericPolicy& policy = config.policy;
  const double rate_tol = 1e-2 * policy.abs_tol;
  const double algebra_tol = policy.abs_tol;
  const double state_tol = 100.0 * policy.abs_tol;
  const MasterEqParams& p = config.params;
  const FockDim dim(config.dim);

  FrameTransform frame;
  try {
    frame = transform_params(p);
  } catch (const std::exception& e) {
    report.checks.push_back(failed_check("squeeze_frame", 0.0, e));
    return report;
  }
  const TransformedRates& rates = frame.rates;
  const double r = frame.squeeze.r;

  report.checks.push_back(
      make_check("rate_difference", std::abs(rates.kappa - (p.gamma1 - p.gamma2)), rate_tol));
  report.checks.push_back(make_check(
      "rate_sum", std::abs((rates.gt1 + rates.gt2) - (p.gamma1 + p.gamma2) / std::cosh(2.0 * r)),
      rate_tol));

  guarded(report, "squeeze_truncation", policy.squeeze_defect_tol, [&] {
    NumericPolicy loose = policy;
    loose.squeeze_defect_tol = std::numeric_limits<double>::infinity();
    const Operator s = make_squeeze(frame.squeeze.xi(), dim, loose);
    const double defect = squeeze_vacuum_defect(s, frame.squeeze.xi());
    return make_check("squeeze_truncation", defect, policy.squeeze_defect_tol,
                      defect > policy.squeeze_defect_tol ? "BadTruncation: raise dim" : "");
  });

  // Interior states keep the ladder algebra exact despite truncation.
  const std::size_t support = std::max<std::size_t>(2, config.dim / 2);
  const Complex g4 = config.gamma4_override.value_or(p.gamma4());

  guarded(report, "generator_hermiticity", algebra_tol, [&] {
    const Operator a = make_annihilation(dim);
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const CMatrix rho = random_interior_state(dim, support, seed);
      const CMatrix l = p.gamma1 * apply_lindblad(Lindblad::L1, rho, a) +
                        p.gamma2 * apply_lindblad(Lindblad::L2, rho, a) +
                        p.gamma3 * apply_lindblad(Lindblad::L3, rho, a) +
                        g4 * apply_lindblad(Lindblad::L4, rho, a);
      worst = std::max(worst, linalg::hermiticity_defect(l));
    }
    return make_check("generator_hermiticity", worst, algebra_tol);
  });

  guarded(report, "generator_trace", algebra_tol, [&] {
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const CMatrix rho = random_interior_state(dim, support, seed);
      worst = std::max(worst, std::abs(apply_generator(p, rho).trace()));
    }
    return make_check("generator_trace", worst, algebra_tol);
  });

  guarded(report, "j_commutators", algebra_tol, [&] {
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const auto res = commutator_residuals(rates, random_interior_state(dim, support, seed));
      for (double v : res) worst = std::max(worst, v);
    }
    return make_check("j_commutators", worst, algebra_tol);
  });

  const std::pair<const char*, Operator> modes[] = {
      {"dimensionless_algebra_a", make_annihilation(dim)},
      {"dimensionless_algebra_b", rotated_mode(frame.squeeze, dim)},
  };
  for (const auto& [name, mode] : modes) {
    guarded(report, name, algebra_tol, [&, name = name, &mode = mode] {
      // b = mu a - nu a+ spreads each application by one level, so the
      // support is kept a few levels further from the edge.
      const std::size_t inner = std::max<std::size_t>(2, config.dim / 3);
      double worst = 0.0;
      for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const auto res = dimensionless_residuals(mode, random_interior_state(dim, inner, seed));
        for (double v : res) worst = std::max(worst, v);
      }
      return make_check(name, worst, algebra_tol);
    });
  }

  std::optional<DensityMatrix> rho0;
  try {
    rho0 = config.initial.build(dim, policy);
  } catch (const std::exception& e) {
    report.checks.push_back(failed_check("initial_state", 0.0, e));
    return report;
  }

  std::vector<DensityMatrix> analytic;
  guarded(report, "analytic_evolution", state_tol, [&] {
    const AnalyticPropagator prop(p, dim, policy);
    double drift = 0.0;
    for (double t : config.times) {
      analytic.push_back(prop.evolve(*rho0, t));
      drift = std::max(drift, std::abs(analytic.back().trace() - rho0->trace()));
    }
    return make_check("analytic_evolution", drift, state_tol, "trace drift");
  });
  if (analytic.size() != config.times.size()) return report;

  if (config.dim <= policy.oracle_max_dim) {
    guarded(report, "oracle_equivalence", state_tol, [&] {
      oracle::Couplings c = oracle::Couplings::from(p);
      c.gamma4 = g4;
      const oracle::Liouvillian l = oracle::build_liouvillian(c, dim, policy);
      const auto ref = oracle::evolve_expm(l, *rho0, config.times);
      double worst = 0.0;
      for (std::size_t k = 0; k < ref.size(); ++k) {
        worst = std::max(worst, trace_distance(analytic[k], ref[k]));
      }
      return make_check("oracle_equivalence", worst, state_tol, "max trace distance");
    });
  } else {
    report.checks.push_back({"oracle_equivalence", 0.0, state_tol, true,
                             "skipped: dim above the oracle cap"});
  }

  // Evolved frame squeezed vacuum against its closed-form mixture. Runs on
  // its own state with at least 80 levels, since the mixture spreads well
  // past the edge of small configured spaces.
  guarded(report, "geometric_mixture", state_tol, [&] {
    const FockDim mix_dim(std::max<std::size_t>(config.dim, 80));
    const Complex xi = frame.squeeze.xi();
    const AnalyticPropagator prop(p, mix_dim, policy);
    const DensityMatrix start = DensityMatrix::pure(squeezed_number_projection(0, xi, mix_dim, policy));
    double worst = 0.0;
    for (double t : config.times) {
      const DensityMatrix ref = squeezed_thermal_reference(xi, rates, t, mix_dim, policy);
      worst = std::max(worst, trace_distance(prop.evolve(start, t), ref));
    }
    return make_check("geometric_mixture", worst, state_tol,
                      "max trace distance at N=" + std::to_string(mix_dim.value()));
  });
  return report;
}

int cmd_validate(const RunConfig& config, std::ostream& out) {
  ValidationReport report;
  try {
    report = build_validation_report(config);
  } catch (const std::exception& e) {
    return exit_for(e, out);
  }
  json doc = report.to_json();
  doc["provenance"] = provenance(config);
  bool written = false;
  for (const OutputSpec& o : config.outputs) {
    if (o.kind != OutputSpec::Kind::Validation) continue;
    try {
      write_file(o.path, doc.dump(2) + "\n");
    } catch (const std::exception& e) {
      return exit_for(e, out);
    }
    written = true;
  }
  if (!written) out << doc.dump(2) << '\n';
  for (const CheckResult& c : report.checks) {
    if (!c.pass) out << "FAILED " << c.name << ": " << c.residual << " > " << c.tolerance << '\n';
  }
  return report.pass() ? kOk : kValidationFailed;
}

int cmd_bench(const RunConfig& config, std::ostream& out) {
  using clock = std::chrono::steady_clock;
  const double t = config.times.back();
  std::ostringstream os;
  const json prov = provenance(config);
  for (const auto& [key, value] : prov.items()) {
    if (key != "N") os << "# " << key << '=' << value.dump() << '\n';
  }
  os << "# t=" << fmt17(t) << '\n';
  os << "N,method,wall_time_s,trace_distance\n";
  for (std::size_t n : config.bench_dims) {
    const FockDim dim(n);
    std::optional<DensityMatrix> rho0;
    try {
      rho0 = config.initial.build(dim, config.policy);
    } catch (const std::exception& e) {
      os << "# N=" << n << ": " << e.what() << '\n';
      continue;
    }

    std::optional<DensityMatrix> ref;
    double expm_time = kNaN;
    if (n <= config.policy.oracle_max_dim) {
      try {
        const auto start = clock::now();
        const auto l = oracle::build_liouvillian(config.params, dim, config.policy);
        ref = oracle::evolve_expm(l, *rho0, t);
        expm_time = std::chrono::duration<double>(clock::now() - start).count();
      } catch (const std::exception& e) {
        os << "# N=" << n << " expm: " << e.what() << '\n';
      }
    }

    double analytic_time = kNaN;
    double distance = kNaN;
    try {
      const auto start = clock::now();
      const AnalyticPropagator prop(config.params, dim, config.policy);
      const DensityMatrix rho = prop.evolve(*rho0, t);
      analytic_time = std::chrono::duration<double>(clock::now() - start).count();
      if (ref) distance = trace_distance(rho, *ref);
    } catch (const std::exception& e) {
      os << "# N=" << n << " analytic: " << e.what() << '\n';
    }
    os << n << ",analytic," << fmt17(analytic_time) << ',' << fmt17(distance) << '\n';
    os << n << ",expm," << fmt17(expm_time) << ',' << fmt17(ref ? 0.0 : kNaN) << '\n';
  }
  out << os.str();
  return kOk;
}

int cmd_params(const RunConfig& config, std::ostream& out) {
  json doc = provenance(config);
  doc["is_cp"] = config.params.is_cp();
  json warnings = json::array();
  for (const Warning& w : config.param_warnings) warnings.push_back(w.message);
  try {
    const FrameTransform f = transform_params(config.params);
    doc["mu"] = f.squeeze.mu;
    doc["nu"] = complex_json(f.squeeze.nu);
    doc["xi"] = complex_json(f.squeeze.xi());
    for (const Warning& w : f.warnings) warnings.push_back(w.message);
    if (f.rates.kappa < 0.0) warnings.push_back("kappa < 0: analytic propagator unavailable");
  } catch (const UnsqueezableParams& e) {
    doc["error"] = e.what();
    out << doc.dump(2) << '\n';
    return kUnsupportedRegime;
  }
  doc["warnings"] = std::move(warnings);
  out << doc.dump(2) << '\n';
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase-sensitive master equation propagator"};
  app.require_subcommand(1);
  std::string config_path;
  std::string bench_out;

  CLI::App* evolve = app.add_subcommand("evolve", "Evolve the configured state and write outputs");
  evolve->add_option("--config", config_path, "JSON config")->required();
  CLI::App* validate = app.add_subcommand("validate", "Run the consistency checks");
  validate->add_option("--config", config_path, "JSON config (default: built-in figure1 run)");
  CLI::App* bench = app.add_subcommand("bench", "Time analytic vs dense-exponential evolution");
  bench->add_option("--config", config_path, "JSON config")->required();
  bench->add_option("--out", bench_out, "CSV output path (default: stdout)");
  CLI::App* params = app.add_subcommand("params", "Print the resolved squeeze frame and rates");
  params->add_option("--config", config_path, "JSON config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return kConfigError;
  }

  RunConfig config;
  try {
    config = (validate->parsed() && config_path.empty()) ? RunConfig::default_validation()
                                                          : RunConfig::load(config_path);
  } catch (const std::exception& e) {
    return exit_for(e, err);
  }

  if (evolve->parsed()) return cmd_evolve(config, err);
  if (validate->parsed()) return cmd_validate(config, out);
  if (params->parsed()) return cmd_params(config, out);
  if (bench_out.empty()) return cmd_bench(config, out);
  std::ostringstream table;
  const int code = cmd_bench(config, table);
  try {
    write_file(bench_out, table.str());
  } catch (const std::exception& e) {
    return exit_for(e, err);
  }
  return code;
}

}  // namespace psme::cli
