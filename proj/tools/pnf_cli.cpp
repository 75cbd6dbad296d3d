// Copyright 2026 The pnf Authors
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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pnf/error.hpp"
#include "pnf/io.hpp"
#include "pnf/normalform.hpp"
#include "pnf/uncouple.hpp"
#include "pnf/verify.hpp"

namespace {

using pnf::Json;

enum Exit { kOk = 0, kError = 1, kHypothesis = 2, kTolerance = 3 };

struct JobConfig {
  std::string command;
  std::string input;
  std::string out = ".";
  std::string path = "auto";
  double delta = 0.05;
  std::string delta_list = "0.2,0.1,0.05,0.025";
  int p = 0;
  int dmax = 0;
  double tau = 1.0;
  double tol_res = 0.0;
  std::uint64_t seed = 12345;
  double h = 1e-3;
  int samples = 200;
};

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(pnf::read_number(Json(tok), "--delta-list"));
  }
  return out;
}

pnf::Path resolve_path(const JobConfig& cfg, const pnf::SystemSpec& s) {
  if (cfg.path == "uncouple") return pnf::Path::Uncouple;
  if (cfg.path == "normalize") return pnf::Path::Normalize;
  return s.m0 > 0 && s.m1 > 0 ? pnf::Path::Uncouple : pnf::Path::Normalize;
}

void emit(const JobConfig& cfg, const std::string& name, const std::string& text) {
  std::filesystem::create_directories(cfg.out);
  const auto path = std::filesystem::path(cfg.out) / name;
  pnf::write_text(path.string(), text);
  std::cout << "wrote " << path.string() << "\n";
}

pnf::UncoupleOptions uncouple_options(const JobConfig& cfg) {
  pnf::UncoupleOptions o;
  o.delta = cfg.delta;
  o.p = cfg.p;
  o.d_max = cfg.dmax;
  o.tau = cfg.tau;
  o.tol_res = cfg.tol_res;
  return o;
}

pnf::NormalFormOptions normal_options(const JobConfig& cfg) {
  pnf::NormalFormOptions o;
  o.delta = cfg.delta;
  o.p = cfg.p;
  o.d_max = cfg.dmax;
  o.tau = cfg.tau;
  o.tol_res = cfg.tol_res;
  o.seed = cfg.seed;
  return o;
}

void print_warnings(const std::vector<std::string>& w) {
  for (const std::string& s : w) std::cout << "warning: " << s << "\n";
}

void print_norms(const char* label, const std::map<int, double>& m) {
  for (const auto& [n, v] : m) std::cout << "  " << label << "_" << n << " = " << pnf::format_number(v) << "\n";
}

int run_check(const JobConfig& cfg, const pnf::SystemSpec& s) {
  const pnf::Path path = resolve_path(cfg, s);
  const pnf::EigenData eig = pnf::eigen_data(s, path);
  const double tol = cfg.tol_res > 0.0 ? cfg.tol_res : pnf::default_tol_res(eig);
  int degree = std::max({2, cfg.p, s.deg_V()});
  pnf::NonresonanceReport nr;
  pnf::ConstantsReport rep;
  for (;;) {
    nr = pnf::check_nonresonance(s, eig, cfg.tau, degree, s.modes_needed(degree), path, tol,
                                 path == pnf::Path::Normalize);
    rep = path == pnf::Path::Uncouple ? pnf::uncouple_constants(s, eig, nr.gamma_eff, cfg.tau, cfg.delta)
                                      : pnf::normalform_constants(s, eig, nr.gamma_eff, cfg.tau, cfg.delta);
    const int want = cfg.p > 0 ? cfg.p : std::min(rep.p_opt, 60);
    if (want <= degree) break;
    degree = want;
  }
  std::cout << "system " << s.name << ": m0=" << s.m0 << " m1=" << s.m1 << " deg_V=" << s.deg_V()
            << " path=" << pnf::path_name(path) << "\n";
  std::cout << "scanned " << nr.scanned << " divisors up to degree " << nr.degree_max
            << ", |k| <= " << nr.fourier_max << "; gamma_eff = " << pnf::format_number(nr.gamma_eff)
            << "\n";
  std::cout << "resonant divisors: " << nr.resonant.size() << "\n";
  for (std::size_t i = 0; i < nr.resonant.size() && i < 20; ++i) {
    const auto& t = nr.resonant[i];
    std::cout << "  alpha=" << t.a.to_string() << " k=" << t.k << " j=" << t.j << "\n";
  }
  Json report{{"command", "check"}, {"ingest", pnf::ingest_summary(s, degree)},
              {"nonresonance", pnf::nonresonance_to_json(nr)},
              {"constants", pnf::constants_to_json(rep)}};
  emit(cfg, "report.json", pnf::canonical_dump(report));
  return kOk;
}

int run_constants(const JobConfig& cfg, const pnf::SystemSpec& s) {
  const pnf::Path path = resolve_path(cfg, s);
  const pnf::EigenData eig = pnf::eigen_data(s, path);
  const double tol = cfg.tol_res > 0.0 ? cfg.tol_res : pnf::default_tol_res(eig);
  const int degree = std::max(2, cfg.p);
  const auto nr = pnf::check_nonresonance(s, eig, cfg.tau, degree, s.modes_needed(degree), path,
                                          tol, true);
  const auto rep = path == pnf::Path::Uncouple
                       ? pnf::uncouple_constants(s, eig, nr.gamma_eff, cfg.tau, cfg.delta)
                       : pnf::normalform_constants(s, eig, nr.gamma_eff, cfg.tau, cfg.delta);
  for (const auto& [k, v] : rep.values()) std::cout << k << " = " << pnf::format_number(v) << "\n";
  emit(cfg, "report.json", pnf::canonical_dump(Json{{"command", "constants"},
                                                    {"constants", pnf::constants_to_json(rep)}}));
  return kOk;
}

int run_uncouple(const JobConfig& cfg, const pnf::SystemSpec& s) {
  const pnf::UncoupleResult r = pnf::uncouple(s, uncouple_options(cfg));
  std::cout << "p = " << r.p << ", d_max = " << r.d_max << ", delta = " << pnf::format_number(r.delta)
            << "\n";
  print_norms("phi", r.phi_norms);
  std::cout << "identity residual " << pnf::format_number(r.identity_residual) << "\n";
  std::cout << "certified bound " << pnf::format_number(r.certified_bound) << "\n";
  print_warnings(r.warnings);
  emit(cfg, "report.json", pnf::canonical_dump(pnf::uncouple_report(s, r)));
  emit(cfg, "results.json", pnf::canonical_dump(pnf::uncouple_results(s, r)));
  return kOk;
}

int run_normalize(const JobConfig& cfg, const pnf::SystemSpec& s) {
  const pnf::NormalFormResult r = pnf::normalize(s, normal_options(cfg));
  std::cout << "p = " << r.p << ", d_max = " << r.d_max << ", delta = " << pnf::format_number(r.delta)
            << "\n";
  print_norms("phi", r.phi_norms);
  print_norms("N", r.N_norms);
  std::cout << "conjugacy residual " << pnf::format_number(r.conjugacy_residual) << "\n";
  std::cout << "criteria residual " << pnf::format_number(r.criteria_residual) << "\n";
  std::cout << "certified bound " << pnf::format_number(r.certified_bound) << "\n";
  print_warnings(r.warnings);
  emit(cfg, "report.json", pnf::canonical_dump(pnf::normalform_report(s, r)));
  emit(cfg, "results.json", pnf::canonical_dump(pnf::normalform_results(s, r)));
  return kOk;
}

int run_sweep(const JobConfig& cfg, const pnf::SystemSpec& s) {
  pnf::SweepOptions o;
  o.tau = cfg.tau;
  o.tol_res = cfg.tol_res;
  o.p = cfg.p;
  o.seed = cfg.seed;
  o.samples = cfg.samples;
  const pnf::SweepResult r = pnf::delta_sweep(s, parse_list(cfg.delta_list), resolve_path(cfg, s), o);
  std::cout << pnf::sweep_csv(r);
  std::cout << "slope " << pnf::format_number(r.slope) << " (omega " << pnf::format_number(r.omega)
            << ")\n";
  emit(cfg, "sweep.csv", pnf::sweep_csv(r));
  emit(cfg, "report.json", pnf::canonical_dump(Json{{"command", "sweep"}, {"sweep", pnf::sweep_to_json(r)}}));
  bool ok = true;
  for (const auto& row : r.rows) ok = ok && row.sampled_sup <= row.certified_bound * (1.0 + 1e-12);
  return ok ? kOk : kTolerance;
}

int run_verify(const JobConfig& cfg, const pnf::SystemSpec& s) {
  const pnf::Path path = resolve_path(cfg, s);
  const int po = cfg.p > 0 ? std::min(cfg.p, 3) : 3;
  Json report{{"command", "verify"}, {"path", pnf::path_name(path)}, {"oracle_p", po}};
  bool ok = true;
  const pnf::OracleResult orc = pnf::oracle_solve(s, po, path, cfg.tol_res);
  const pnf::EigenData eig = pnf::eigen_data(s, path);
  if (path == pnf::Path::Uncouple) {
    const double diff = pnf::relative_difference(orc.phi, pnf::build_phi(s, eig, po));
    report["oracle_phi_difference"] = diff;
    ok = ok && diff <= 1e-10;
    const pnf::UncoupleResult r = pnf::uncouple(s, uncouple_options(cfg));
    const double sup = pnf::sampled_sup(r.R, cfg.delta, s.ell, cfg.samples, cfg.seed);
    const double t_end = 10.0 * s.T;
    const pnf::DriftReport d = pnf::manifold_drift(s, r, cfg.delta, t_end, cfg.h, cfg.seed);
    const double drift_bound = 10.0 * t_end * r.certified_bound;
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> g(0.0, 1.0);
    pnf::RVector u0(s.m0);
    for (int i = 0; i < s.m0; ++i) u0[i] = g(rng);
    u0 *= 0.5 * cfg.delta / std::max(u0.norm(), 1e-300);
    const double gap = pnf::pushforward_gap(s, r, u0, s.T, cfg.h);
    report["p"] = r.p;
    report["certified_bound"] = r.certified_bound;
    report["sampled_sup"] = sup;
    report["drift"] = Json{{"max_v1", d.max_v1}, {"max_u0", d.max_u0}, {"exited", d.exited},
                           {"t_end", t_end}, {"bound", drift_bound}};
    report["pushforward_gap"] = gap;
    ok = ok && sup <= r.certified_bound * (1.0 + 1e-12);
    ok = ok && (d.exited || d.max_v1 <= drift_bound);
    std::cout << "oracle difference " << pnf::format_number(diff) << "\n"
              << "sampled sup " << pnf::format_number(sup) << " <= certified "
              << pnf::format_number(r.certified_bound) << "\n"
              << "drift " << pnf::format_number(d.max_v1) << " (bound " << pnf::format_number(drift_bound)
              << ")\n"
              << "pushforward gap " << pnf::format_number(gap) << "\n";
  } else {
    const double tol = cfg.tol_res > 0.0 ? cfg.tol_res : pnf::default_tol_res(eig);
    const pnf::PhiN pn = pnf::build_phi_N(s, eig, po, tol);
    const double dphi = pnf::relative_difference(orc.phi, pn.phi);
    const double dn = pnf::relative_difference(orc.N, pn.N);
    report["oracle_phi_difference"] = dphi;
    report["oracle_N_difference"] = dn;
    report["kernel_dim"] = orc.kernel_dim;
    report["resonant_monomials"] = orc.expected_kernel;
    ok = ok && dphi <= 1e-10 && dn <= 1e-10;
    const pnf::NormalFormResult r = pnf::normalize(s, normal_options(cfg));
    const double sup = pnf::sampled_sup(r.R, cfg.delta, s.ell, cfg.samples, cfg.seed);
    report["p"] = r.p;
    report["certified_bound"] = r.certified_bound;
    report["sampled_sup"] = sup;
    report["criteria_residual"] = r.criteria_residual;
    report["coefficient_criteria_residual"] = r.coefficient_criteria_residual;
    ok = ok && sup <= r.certified_bound * (1.0 + 1e-12);
    std::cout << "oracle difference phi " << pnf::format_number(dphi) << ", N " << pnf::format_number(dn)
              << "\n"
              << "sampled sup " << pnf::format_number(sup) << " <= certified "
              << pnf::format_number(r.certified_bound) << "\n"
              << "criteria residual " << pnf::format_number(r.criteria_residual) << "\n";
  }
  report["passed"] = ok;
  emit(cfg, "report.json", pnf::canonical_dump(report));
  std::cout << (ok ? "verify: all checks passed" : "verify: FAILED") << "\n";
  return ok ? kOk : kTolerance;
}

int run(const JobConfig& cfg) {
  if (!(cfg.delta > 0.0)) throw std::invalid_argument("--delta must be positive");
  const pnf::SystemSpec s = pnf::load_system(cfg.input);
  if (cfg.command == "check") return run_check(cfg, s);
  if (cfg.command == "constants") return run_constants(cfg, s);
  if (cfg.command == "uncouple") return run_uncouple(cfg, s);
  if (cfg.command == "normalize") return run_normalize(cfg, s);
  if (cfg.command == "sweep") return run_sweep(cfg, s);
  return run_verify(cfg, s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic normal forms and uncoupling with exponentially small remainders"};
  app.require_subcommand(1);
  JobConfig cfg;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"check", "ingest a system and scan its small divisors"},
      {"uncouple", "uncouple E1 from E0 up to an exponentially small remainder"},
      {"normalize", "compute the periodic normal form"},
      {"sweep", "remainder bounds over a list of radii"},
      {"verify", "oracle, sampling and integration checks"},
      {"constants", "print the constants of the estimates"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("input", cfg.input, "system JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_option("--delta", cfg.delta, "radius delta");
    sub->add_option("--p", cfg.p, "truncation degree (default: optimal)");
    sub->add_option("--dmax", cfg.dmax, "highest degree kept in the remainder");
    sub->add_option("--tau", cfg.tau, "diophantine exponent");
    sub->add_option("--tol-res", cfg.tol_res, "resonance tolerance");
    sub->add_option("--seed", cfg.seed, "seed for sampling");
    sub->add_option("--path", cfg.path, "uncouple, normalize or auto")
        ->check(CLI::IsMember({"auto", "uncouple", "normalize"}));
    if (name == "sweep") sub->add_option("--delta-list", cfg.delta_list, "comma-separated radii, decreasing");
    if (name == "sweep" || name == "verify") sub->add_option("--samples", cfg.samples, "random sample points");
    if (name == "verify") sub->add_option("--step", cfg.h, "integrator step");
    sub->callback([&cfg, name = name] { cfg.command = name; });
  }
  CLI11_PARSE(app, argc, argv);
  try {
    return run(cfg);
  } catch (const pnf::HypothesisViolation& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return kHypothesis;
  } catch (const pnf::ToleranceFailure& e) {
    std::cerr << "tolerance failure: " << e.what() << "\n";
    return kTolerance;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
}
