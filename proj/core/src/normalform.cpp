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

#include "pnf/normalform.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pnf/error.hpp"
#include "pnf/norms.hpp"
#include "pnf/uncouple.hpp"

namespace pnf {

PolyMap nf_rhs(const SystemSpec& sys, const PolyMap& phi, const PolyMap& N, int max_deg) {
  PolyMap shift = PolyMap::identity(sys.m(), sys.T);
  shift += phi;
  PolyMap r = compose(sys.V, shift, max_deg);
  r -= directional_derivative(phi, N, max_deg);
  return r;
}

PhiN build_phi_N(const SystemSpec& sys, const EigenData& eig, int p, double tol_res, double c_ell,
                 double tau) {
  const int m = sys.m();
  PhiN out{PolyMap(m, m, sys.T), PolyMap(m, m, sys.T)};
  for (int n = 2; n <= p; ++n) {
    const HomoPoly rhs = nf_rhs(sys, out.phi, out.N, n).part(n);
    if (rhs.is_zero()) continue;
    const HomologicalSolution sol = split_normal(rhs, sys, eig, tol_res);
    out.resonant_terms += sol.resonant_terms;
    out.borderline_terms += sol.borderline_terms;
    if (c_ell > 0.0) {
      const double f = graded_norm(rhs, sys.ell);
      const double slack = 1.0 + 1e-10;
      if (graded_norm(*sol.N, sys.ell) > slack * f) {
        throw ToleranceFailure("build_phi_N: ||N_" + std::to_string(n) + "|| exceeds ||RHS||");
      }
      const double bound = c_ell * std::pow(n, sys.ell + tau) * f;
      if (graded_norm(sol.phi, sys.ell) > slack * bound) {
        throw ToleranceFailure("build_phi_N: ||phi_" + std::to_string(n) +
                               "|| exceeds C_ell n^(ell+tau) ||RHS||");
      }
    }
    out.phi.add_part(sol.phi);
    out.N.add_part(*sol.N);
  }
  return out;
}

PolyMap nf_remainder(const SystemSpec& sys, const PolyMap& phi, const PolyMap& N, int p, int d_max) {
  if (d_max < p + 1) throw std::invalid_argument("nf_remainder: need d_max >= p + 1");
  const PolyMap rhs = project(nf_rhs(sys, phi, N, d_max), p + 1, d_max);
  PolyMap r = rhs;
  for (int i = 0; i < d_max - p; ++i) {
    PolyMap next = rhs;
    next -= directional_derivative(phi, r, d_max);
    r = std::move(next);
  }
  PolyMap check = r;
  check += directional_derivative(phi, r, d_max);
  check -= rhs;
  const double scale = std::max(rhs.max_abs(), 1e-300);
  if (check.max_abs() > 1e-10 * scale) {
    throw ToleranceFailure("nf_remainder: Neumann series residual " +
                           std::to_string(check.max_abs() / scale));
  }
  return r;
}

double conjugacy_residual(const SystemSpec& sys, const PolyMap& phi, const PolyMap& N,
                          const PolyMap& R, int d_max) {
  PolyMap shift = PolyMap::identity(sys.m(), sys.T);
  shift += phi;
  const PolyMap lhs = compose(sys.V, shift, d_max);
  PolyMap nr = N;
  nr += R;
  PolyMap diff = lhs;
  diff -= apply_forward(phi, sys, Path::Normalize);
  diff -= nr;
  diff -= directional_derivative(phi, nr, d_max);
  return diff.max_abs() / std::max(lhs.max_abs(), 1e-300);
}

namespace {

// P diag(exp(s conj(lambda))) P^*, which is exp(s L^*) for normal L.
CMatrix adjoint_exp(const EigenData& eig, double s) {
  CVector d(eig.lambda.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = std::exp(s * std::conj(eig.lambda[i]));
  return eig.P * d.asDiagonal() * eig.P.adjoint();
}

}  // namespace

double check_criteria(const PolyMap& N, const EigenData& eig, int samples, std::uint64_t seed,
                      bool literal) {
  if (N.is_zero()) return 0.0;
  if (eig.path != Path::Normalize) throw std::invalid_argument("check_criteria: needs normalize eigen data");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> ut(0.0, N.period());
  const int m = N.nvars();
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    CVector y(m);
    for (int i = 0; i < m; ++i) y[i] = u(rng);
    const double t = ut(rng);
    const double sign = literal ? -1.0 : 1.0;
    const CVector x = adjoint_exp(eig, -sign * t) * y;
    const CVector lhs = adjoint_exp(eig, sign * t) * N.evaluate(x, t);
    worst = std::max(worst, (lhs - N.evaluate(y, 0.0)).norm());
  }
  return worst;
}

double coefficient_criteria_residual(const PolyMap& N, const SystemSpec& sys) {
  const RMatrix lt = sys.L().transpose();
  double worst = 0.0;
  for (const auto& [n, h] : N.parts()) {
    HomoPoly d = h.time_derivative();
    d -= directional_derivative(h, linear_part(lt, h.period()));
    d += h.transformed(lt.cast<Complex>(), true);
    worst = std::max(worst, graded_norm(d, sys.ell) / std::max(1.0, graded_norm(h, sys.ell)));
  }
  return worst;
}

NormalFormResult normalize(const SystemSpec& sys, const NormalFormOptions& opt) {
  sys.validate();
  if (!(opt.delta > 0.0)) throw std::invalid_argument("normalize: delta must be positive");
  const EigenData eig = eigen_data(sys, Path::Normalize);
  const double tol = opt.tol_res > 0.0 ? opt.tol_res : default_tol_res(eig);
  NormalFormResult res;
  res.delta = opt.delta;
  int scan_degree = std::max(2, opt.p);
  for (;;) {
    res.nonres = check_nonresonance(sys, eig, opt.tau, scan_degree, sys.modes_needed(scan_degree),
                                    Path::Normalize, tol, true);
    res.report = normalform_constants(sys, eig, res.nonres.gamma_eff, opt.tau, opt.delta);
    res.p = opt.p > 0 ? opt.p : res.report.p_opt;
    if (res.p > opt.p_cap) {
      res.warnings.push_back("p_opt " + std::to_string(res.p) + " capped at " +
                             std::to_string(opt.p_cap));
      res.p = opt.p_cap;
    }
    if (res.p <= scan_degree) break;
    scan_degree = res.p;
  }
  if (!res.report.exponent_condition) {
    throw HypothesisViolation("tau <= ell fails (tau=" + std::to_string(opt.tau) +
                              ", ell=" + std::to_string(sys.ell) + ")");
  }
  if (!res.nonres.literal_hypothesis_holds()) {
    res.warnings.push_back(std::to_string(res.nonres.resonant.size()) +
                           " resonant divisors exempted from the non-resonance bound");
  }
  if (!res.nonres.borderline.empty()) {
    res.warnings.push_back(std::to_string(res.nonres.borderline.size()) +
                           " divisors within 10x of tol_res");
  }
  res.d_max = opt.d_max > 0 ? opt.d_max : default_d_max(sys.deg_V(), res.p);
  if (res.d_max < res.p + 1) throw std::invalid_argument("normalize: d_max must exceed p");
  PhiN pn = build_phi_N(sys, eig, res.p, tol, res.report.C_ell(), opt.tau);
  res.phi = std::move(pn.phi);
  res.N = std::move(pn.N);
  res.R = nf_remainder(sys, res.phi, res.N, res.p, res.d_max);
  res.conjugacy_residual = conjugacy_residual(sys, res.phi, res.N, res.R, res.d_max);
  if (res.conjugacy_residual > 1e-10) {
    throw ToleranceFailure("normalize: conjugacy residual " +
                           std::to_string(res.conjugacy_residual) + " exceeds 1e-10");
  }
  res.phi_norms = graded_norms(res.phi, sys.ell);
  res.N_norms = graded_norms(res.N, sys.ell);
  res.criteria_residual = check_criteria(res.N, eig, opt.criteria_samples, opt.seed);
  res.literal_criteria_residual = check_criteria(res.N, eig, opt.criteria_samples, opt.seed, true);
  res.coefficient_criteria_residual = coefficient_criteria_residual(res.N, sys);
  const double nscale = res.N.is_zero() ? 0.0 : res.N.max_abs();
  if (res.criteria_residual > 1e-9 * (1.0 + nscale)) {
    res.warnings.push_back("normal-form criterion residual " +
                           std::to_string(res.criteria_residual) + " above 1e-9 (1 + |N|)");
  }
  res.certified_bound = res.R.is_zero() ? 0.0 : certified_sup_bound(res.R, opt.delta, sys.ell);
  return res;
}

}  // namespace pnf
