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

#include "pnf/uncouple.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "pnf/error.hpp"
#include "pnf/norms.hpp"

namespace pnf {

int default_d_max(int deg_v, int p) {
  const int d = std::max(deg_v, 2);
  return std::max(p + 1, std::min(d * p, p + 2 * d));
}

PolyMap embed_graph(const PolyMap& phi, int m0, int m1) {
  PolyMap g = PolyMap::identity(m0, phi.period()).embedded_codomain(m0 + m1, 0, Codomain::Full);
  g += phi.embedded_codomain(m0 + m1, m0, Codomain::Full);
  return g;
}

PolyMap uncouple_rhs(const SystemSpec& sys, const PolyMap& phi, int max_deg) {
  const PolyMap w = compose(sys.V, embed_graph(phi, sys.m0, sys.m1), max_deg);
  PolyMap e = w.components(sys.m0, sys.m1, Codomain::E1);
  e -= directional_derivative(phi, w.components(0, sys.m0, Codomain::E0), max_deg);
  return e;
}

PolyMap apply_forward(const PolyMap& phi, const SystemSpec& sys, Path path) {
  PolyMap r(phi.nvars(), phi.dim(), phi.period(), phi.codomain());
  for (const auto& [n, h] : phi.parts()) r.add_part(apply_forward(h, sys, path));
  return r;
}

PolyMap build_phi(const SystemSpec& sys, const EigenData& eig, int p) {
  PolyMap phi(sys.m0, sys.m1, sys.T, Codomain::E1);
  for (int n = 2; n <= p; ++n) {
    const HomoPoly rhs = uncouple_rhs(sys, phi, n).part(n);
    if (rhs.is_zero()) continue;
    phi.add_part(solve_coupling(rhs, sys, eig).phi);
  }
  return phi;
}

PolyMap compute_remainder(const SystemSpec& sys, const PolyMap& phi, int p, int d_max) {
  if (d_max < p + 1) throw std::invalid_argument("compute_remainder: need d_max >= p + 1");
  return project(uncouple_rhs(sys, phi, d_max), p + 1, d_max);
}

double identity_residual(const SystemSpec& sys, const PolyMap& phi, const PolyMap& r, int d_max) {
  const PolyMap e = uncouple_rhs(sys, phi, d_max);
  PolyMap diff = e;
  diff -= apply_forward(phi, sys, Path::Uncouple);
  diff -= r;
  const double scale = std::max(e.max_abs(), 1e-300);
  return diff.max_abs() / scale;
}

int choose_p_opt(double delta, const ConstantsReport& report) { return report.p_opt_at(delta); }

Transformed transform(const SystemSpec& sys, const PolyMap& phi, const PolyMap& r, int d_max) {
  const int m = sys.m();
  Transformed tr;
  tr.d_max = d_max;
  const PolyMap phi_l = phi.lifted(m, 0);
  PolyMap psi = PolyMap::identity(m, sys.T);
  psi += phi_l.embedded_codomain(m, sys.m0, Codomain::Full);
  const PolyMap w = compose(sys.V, psi, d_max);
  tr.V0t = w.components(0, sys.m0, Codomain::E0);
  PolyMap y = w.components(sys.m0, sys.m1, Codomain::E1);
  y -= directional_derivative(phi_l, tr.V0t.embedded_codomain(m, 0, Codomain::Full), d_max);
  y -= apply_forward(phi, sys, Path::Uncouple).lifted(m, 0);
  y -= r.lifted(m, 0);
  const int m0 = sys.m0;
  const int m1 = sys.m1;
  auto v1_free = [m0, m1](const MultiIndex& a) { return a.slice(m0, m1).degree() == 0; };
  const double scale = std::max({y.max_abs(), r.max_abs(), 1e-300});
  tr.v1_free_residual = y.filter_terms(v1_free).max_abs() / scale;
  tr.V1t = y.filter_terms([&](const MultiIndex& a) { return !v1_free(a); });
  tr.R = r;
  return tr;
}

namespace {

CVector random_ball_point(std::mt19937_64& rng, int n, double radius) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RVector x(n);
  for (int i = 0; i < n; ++i) x[i] = g(rng);
  const double norm = x.norm();
  if (norm == 0.0) x[0] = 1.0;
  x *= radius * std::pow(u(rng), 1.0 / n) / std::max(norm, 1e-300);
  return x.cast<Complex>();
}

}  // namespace

double sampled_v1_constant(const Transformed& tr, int m0, int ell, double radius, int samples,
                           std::uint64_t seed) {
  const int m = tr.V1t.nvars();
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    CVector x(m);
    x.head(m0) = random_ball_point(rng, m0, radius);
    x.tail(m - m0) = random_ball_point(rng, m - m0, radius);
    const double nu0 = x.head(m0).norm();
    const double nv1 = x.tail(m - m0).norm();
    const double denom = nv1 * (nu0 + nv1);
    if (denom == 0.0) continue;
    worst = std::max(worst, hj_norm(tr.V1t.evaluate_trig(x), ell) / denom);
  }
  return worst;
}

UncoupleResult uncouple(const SystemSpec& sys, const UncoupleOptions& opt) {
  sys.validate();
  if (!(opt.delta > 0.0)) throw std::invalid_argument("uncouple: delta must be positive");
  const EigenData eig = eigen_data(sys, Path::Uncouple);
  const double tol = opt.tol_res > 0.0 ? opt.tol_res : default_tol_res(eig);
  UncoupleResult res;
  res.delta = opt.delta;
  int scan_degree = std::max(2, opt.p);
  for (;;) {
    res.nonres = check_nonresonance(sys, eig, opt.tau, scan_degree, sys.modes_needed(scan_degree),
                                    Path::Uncouple, tol);
    res.report = uncouple_constants(sys, eig, res.nonres.gamma_eff, opt.tau, opt.delta);
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
    throw HypothesisViolation("tau * nu <= ell fails (tau=" + std::to_string(opt.tau) +
                              ", nu=" + std::to_string(res.report.nu) +
                              ", ell=" + std::to_string(sys.ell) + ")");
  }
  if (!res.report.delta_in_range) res.warnings.push_back("delta >= delta0: outside the guaranteed range");
  if (!res.nonres.borderline.empty()) {
    res.warnings.push_back(std::to_string(res.nonres.borderline.size()) +
                           " divisors within 10x of tol_res");
  }
  res.d_max = opt.d_max > 0 ? opt.d_max : default_d_max(sys.deg_V(), res.p);
  if (res.d_max < res.p + 1) throw std::invalid_argument("uncouple: d_max must exceed p");
  res.phi = build_phi(sys, eig, res.p);
  res.phi_2 = res.p >= 2 ? project(res.phi, 2, 2) : build_phi(sys, eig, 2);
  res.R = compute_remainder(sys, res.phi, res.p, res.d_max);
  res.identity_residual = identity_residual(sys, res.phi, res.R, res.d_max);
  if (res.identity_residual > 1e-10) {
    throw ToleranceFailure("uncouple: defining identity residual " +
                           std::to_string(res.identity_residual) + " exceeds 1e-10");
  }
  res.phi_norms = graded_norms(res.phi, sys.ell);
  for (const auto& [n, v] : res.phi_norms) {
    res.gevrey_ratio[n] = v / res.report.gevrey_bound(n, sys.m0);
  }
  res.certified_bound = res.R.is_zero() ? 0.0 : certified_sup_bound(res.R, opt.delta, sys.ell);
  return res;
}

namespace {

// Terms with no factor of variable e, re-expressed without that variable.
PolyMap drop_variable(const PolyMap& f, int e) {
  PolyMap r(f.nvars() - 1, f.dim(), f.period(), f.codomain());
  for (const auto& [n, h] : f.parts()) {
    for (const auto& [a, c] : h.coeffs()) {
      if (a[e] != 0) continue;
      std::vector<int> ex = a.exponents();
      ex.erase(ex.begin() + e);
      r.add_term(MultiIndex(std::move(ex)), c);
    }
  }
  return r;
}

RMatrix drop_row_col(const RMatrix& a, int e) {
  const int n = static_cast<int>(a.rows());
  RMatrix r(n - 1, n - 1);
  for (int i = 0, ri = 0; i < n; ++i) {
    if (i == e) continue;
    for (int j = 0, rj = 0; j < n; ++j) {
      if (j == e) continue;
      r(ri, rj++) = a(i, j);
    }
    ++ri;
  }
  return r;
}

}  // namespace

SystemSpec drop_parameter(const SystemSpec& sys) {
  const int e = sys.epsilon_index;
  if (e < 0) throw std::invalid_argument("drop_parameter: system has no parameter coordinate");
  const CMatrix& p = sys.L0.eigvecs;
  Eigen::Index col = 0;
  p.row(e).cwiseAbs().maxCoeff(&col);
  const double scale = p.cwiseAbs().maxCoeff();
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    if (j != col && std::abs(p(e, j)) > 1e-12 * scale) {
      throw std::invalid_argument("drop_parameter: eigenvectors mix the parameter coordinate");
    }
  }
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    if (i != e && std::abs(p(i, col)) > 1e-12 * scale) {
      throw std::invalid_argument("drop_parameter: eigenvectors mix the parameter coordinate");
    }
  }
  SystemSpec r = sys;
  r.name = sys.name + "_reduced";
  r.epsilon_index = -1;
  r.m0 = sys.m0 - 1;
  r.L0.matrix = drop_row_col(sys.L0.matrix, e);
  r.L0.eigvals = CVector(r.m0);
  r.L0.eigvecs = CMatrix(r.m0, r.m0);
  for (int j = 0, rj = 0; j < sys.m0; ++j) {
    if (j == col) continue;
    r.L0.eigvals[rj] = sys.L0.eigvals[j];
    for (int i = 0, ri = 0; i < sys.m0; ++i) {
      if (i == e) continue;
      r.L0.eigvecs(ri++, rj) = p(i, j);
    }
    ++rj;
  }
  CMatrix sel = CMatrix::Zero(sys.m() - 1, sys.m());
  for (int i = 0, ri = 0; i < sys.m(); ++i) {
    if (i != e) sel(ri++, i) = 1.0;
  }
  r.V = drop_variable(sys.V, e).transformed(sel, true);
  return r;
}

EpsilonSplit epsilon_split(const SystemSpec& sys, int p) {
  sys.validate();
  const int e = sys.epsilon_index;
  if (e < 0) throw std::invalid_argument("epsilon_split: system has no parameter coordinate");
  const EigenData eig = eigen_data(sys, Path::Uncouple);
  try {
    check_nonresonance(sys, eig, 1.0, std::max(p, 2), sys.modes_needed(p), Path::Uncouple,
                       default_tol_res(eig));
  } catch (const HypothesisViolation& ex) {
    throw HypothesisViolation(std::string("augmented system: ") + ex.what());
  }
  EpsilonSplit out;
  out.phi = build_phi(sys, eig, p);
  out.phi_A = drop_variable(out.phi, e);
  const double scale = std::max(out.phi.max_abs(), 1e-300);
  out.autonomy_gap = out.phi_A.filter_modes([](int k) { return k != 0; }).max_abs() / scale;
  out.phi_A = out.phi_A.filter_modes([](int k) { return k == 0; });
  PolyMap bc(sys.m0, sys.m1, sys.T, Codomain::E1);
  for (const auto& [n, h] : out.phi.parts()) {
    for (const auto& [a, c] : h.coeffs()) {
      if (a[e] > 0) bc.add_term(a.lowered(e), c);
    }
  }
  out.phi_BC = bc;
  const SystemSpec reduced = drop_parameter(sys);
  out.phi_reduced = build_phi(reduced, eigen_data(reduced, Path::Uncouple), p);
  out.reduced_gap = relative_difference(out.phi_A, out.phi_reduced);
  out.max_gap = std::max(out.autonomy_gap, out.reduced_gap);
  return out;
}

}  // namespace pnf
