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

#include "pnf/homological.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>
#include <vector>

#include "pnf/error.hpp"
#include "pnf/norms.hpp"
#include "pnf/parallel.hpp"

namespace pnf {

HomoPoly linear_part(const RMatrix& a, double period) {
  HomoPoly h(1, static_cast<int>(a.cols()), static_cast<int>(a.rows()), period);
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    TrigPoly c = TrigPoly::constant(period, a.col(j).cast<Complex>());
    c.mark_real();
    h.add_term(MultiIndex::unit(a.cols(), j), c);
  }
  return h;
}

HomoPoly apply_forward(const HomoPoly& phi, const SystemSpec& sys, Path path) {
  if (phi.degree() < 1) throw std::invalid_argument("apply_forward: degree must be >= 1");
  const RMatrix& src = path == Path::Uncouple ? sys.L0.matrix : sys.L();
  const RMatrix tgt = path == Path::Uncouple ? sys.L1.matrix : sys.L();
  HomoPoly r = directional_derivative(phi, linear_part(src, phi.period()));
  r -= phi.transformed(tgt.cast<Complex>(), true);
  r += phi.time_derivative();
  return r;
}

HomoPoly substitute_linear(const HomoPoly& f, const CMatrix& a, bool a_is_real) {
  PolyMap wrap(f.nvars(), f.dim(), f.period(), f.codomain());
  wrap.add_part(f);
  PolyMap out = compose(wrap, PolyMap::linear(a, f.period(), a_is_real), f.degree());
  return out.part(f.degree());
}

namespace {

bool is_identity(const CMatrix& p) {
  return p.rows() == p.cols() && p == CMatrix::Identity(p.rows(), p.cols());
}

struct Entry {
  MultiIndex alpha;
  int k;
  CVector rhs;
};

std::vector<Entry> flatten(const HomoPoly& g) {
  std::vector<Entry> out;
  for (const auto& [a, c] : g.coeffs()) {
    for (const auto& [k, v] : c.modes()) out.push_back({a, k, v});
  }
  return out;
}

double relative_residual(const HomoPoly& diff, const HomoPoly& f, int ell) {
  const double scale = graded_norm(f, ell);
  const double r = graded_norm(diff, ell);
  if (scale == 0.0) return r;
  return r / scale;
}

void finish_real(HomoPoly& h, bool real, double noise_scale) {
  if (noise_scale > 0.0) h.prune(1e-15 * noise_scale);
  if (real) h.mark_real();
}

}  // namespace

HomologicalSolution solve_coupling(const HomoPoly& F, const SystemSpec& sys, const EigenData& eig) {
  if (F.nvars() != sys.m0 || F.dim() != sys.m1) {
    throw std::invalid_argument("solve_coupling: F must map E0 into E1");
  }
  HomologicalSolution sol;
  sol.min_divisor = std::numeric_limits<double>::infinity();
  const bool identity = is_identity(eig.P0);
  const HomoPoly g = identity ? F : substitute_linear(F, eig.P0, false);
  const std::vector<Entry> entries = flatten(g);
  const CMatrix l1 = sys.L1.matrix.cast<Complex>();
  const int m1 = sys.m1;
  std::vector<CVector> solved(entries.size());
  std::vector<double> divs(entries.size());
  parallel_for(entries.size(), [&](std::size_t i) {
    const Entry& e = entries[i];
    const Complex s = divisor(e.alpha, e.k, eig.lambda0, Complex(0.0, 0.0), sys.T);
    const CMatrix a = s * CMatrix::Identity(m1, m1) - l1;
    Eigen::JacobiSVD<CMatrix> svd(a);
    const auto& sv = svd.singularValues();
    const double cond = sv(m1 - 1) > 0.0 ? sv(0) / sv(m1 - 1) : std::numeric_limits<double>::infinity();
    if (!(cond <= 1e12)) {
      std::ostringstream os;
      os << "solve_coupling: singular homological system at alpha=" << e.alpha.to_string()
         << " k=" << e.k << " (condition " << cond << ")";
      throw HypothesisViolation(os.str());
    }
    solved[i] = Eigen::PartialPivLU<CMatrix>(a).solve(e.rhs);
    double dmin = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < eig.lambda1.size(); ++j) {
      dmin = std::min(dmin, std::abs(s - eig.lambda1[j]));
    }
    divs[i] = dmin;
  });
  HomoPoly psi(F.degree(), F.nvars(), F.dim(), F.period(), Codomain::E1);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    TrigPoly c(F.period(), F.dim());
    c.set_mode(entries[i].k, solved[i]);
    psi.add_term(entries[i].alpha, c);
    sol.min_divisor = std::min(sol.min_divisor, divs[i]);
  }
  sol.phi = identity ? psi : substitute_linear(psi, eig.P0inv, false);
  sol.phi.set_codomain(Codomain::E1);
  finish_real(sol.phi, F.real() && !F.is_zero(), identity ? 0.0 : sol.phi.max_abs());
  sol.residual = relative_residual(apply_forward(sol.phi, sys, Path::Uncouple) - F, F, sys.ell);
  if (sol.residual > 1e-10) {
    throw ToleranceFailure("solve_coupling: forward residual " + std::to_string(sol.residual) +
                           " exceeds 1e-10");
  }
  return sol;
}

HomologicalSolution split_normal(const HomoPoly& F, const SystemSpec& sys, const EigenData& eig,
                                 double tol_res) {
  const int m = sys.m();
  if (F.nvars() != m || F.dim() != m) throw std::invalid_argument("split_normal: F must map R^m to R^m");
  if (eig.path != Path::Normalize) throw std::invalid_argument("split_normal: needs normalize eigen data");
  HomologicalSolution sol;
  sol.min_divisor = std::numeric_limits<double>::infinity();
  const bool identity = is_identity(eig.P);
  const HomoPoly g =
      identity ? F : substitute_linear(F, eig.P, false).transformed(eig.Pinv, false);
  HomoPoly psi(F.degree(), m, m, F.period());
  HomoPoly nu(F.degree(), m, m, F.period());
  for (const auto& [a, c] : g.coeffs()) {
    TrigPoly pc(F.period(), m);
    TrigPoly nc(F.period(), m);
    for (const auto& [k, v] : c.modes()) {
      CVector pv = CVector::Zero(m);
      CVector nv = CVector::Zero(m);
      for (int j = 0; j < m; ++j) {
        if (v[j] == Complex(0.0, 0.0)) continue;
        const Complex d = divisor(a, k, eig.lambda, eig.lambda[j], sys.T);
        const double mag = std::abs(d);
        if (mag <= tol_res) {
          nv[j] = v[j];
          ++sol.resonant_terms;
        } else {
          pv[j] = v[j] / d;
          sol.min_divisor = std::min(sol.min_divisor, mag);
          if (mag <= 10.0 * tol_res) ++sol.borderline_terms;
        }
      }
      pc.set_mode(k, pv);
      nc.set_mode(k, nv);
    }
    psi.add_term(a, pc);
    nu.add_term(a, nc);
  }
  if (identity) {
    sol.phi = psi;
    sol.N = nu;
  } else {
    sol.phi = substitute_linear(psi, eig.Pinv, false).transformed(eig.P, false);
    sol.N = substitute_linear(nu, eig.Pinv, false).transformed(eig.P, false);
  }
  const bool real = F.real() && !F.is_zero();
  finish_real(sol.phi, real, identity ? 0.0 : sol.phi.max_abs());
  finish_real(*sol.N, real, identity ? 0.0 : sol.N->max_abs());
  HomoPoly diff = apply_forward(sol.phi, sys, Path::Normalize);
  diff += *sol.N;
  diff -= F;
  sol.residual = relative_residual(diff, F, sys.ell);
  if (sol.residual > 1e-10) {
    throw ToleranceFailure("split_normal: forward residual " + std::to_string(sol.residual) +
                           " exceeds 1e-10");
  }
  return sol;
}

Complex scalar_product(const HomoPoly& p, const HomoPoly& q, int k) {
  if (p.nvars() != q.nvars() || p.dim() != q.dim() || p.degree() != q.degree()) {
    throw std::invalid_argument("scalar_product: shape mismatch");
  }
  Complex s(0.0, 0.0);
  for (const auto& [a, c] : p.coeffs()) {
    auto it = q.coeffs().find(a);
    if (it == q.coeffs().end()) continue;
    s += a.factorial() * c.mode(k).dot(it->second.mode(k));
  }
  return s;
}

}  // namespace pnf
