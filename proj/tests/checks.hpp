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

#pragma once

// Randomized checks shared by the unit tests and the acceptance binary. Each
// returns the number of instances and violations.

#include <algorithm>
#include <cmath>
#include <functional>

#include "pnf/error.hpp"
#include "pnf/homological.hpp"
#include "pnf/norms.hpp"
#include "pnf/spectrum.hpp"
#include "pnf/uncouple.hpp"
#include "support.hpp"

namespace pnf::testing {

struct Tally {
  int instances = 0;
  int violations = 0;
  double worst = 0.0;  // max lhs / rhs

  void add(double lhs, double rhs) {
    ++instances;
    const double r = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? INFINITY : 0.0);
    worst = std::max(worst, r);
    if (lhs > rhs * (1.0 + 1e-12) + 1e-300) ++violations;
  }
};

inline RVector random_real_vector(Rng& rng, int n, double radius) {
  RVector x(n);
  for (int i = 0; i < n; ++i) x[i] = uniform(rng, -1, 1);
  return x * (radius * uniform(rng, 0, 1) / std::max(x.norm(), 1e-300));
}

// Fourier modes |k| <= kmax of a T-periodic function, from 2 kmax + 1 samples.
inline TrigPoly trig_from_samples(const std::function<CVector(double)>& f, double period, int dim,
                                  int kmax) {
  const int n = 2 * kmax + 1;
  std::vector<CVector> vals;
  vals.reserve(n);
  for (int s = 0; s < n; ++s) vals.push_back(f(period * s / n));
  TrigPoly out(period, dim);
  for (int k = -kmax; k <= kmax; ++k) {
    CVector c = CVector::Zero(dim);
    for (int s = 0; s < n; ++s) c += vals[s] * std::polar(1.0, -2.0 * kPi * k * s / n);
    out.add_to_mode(k, c / static_cast<double>(n));
  }
  return out;
}

// |Phi(u, .)|_{H^l} <= ||Phi||_{n,H^l} |u|^n.
inline Tally evaluation_bound(Rng& rng, int count) {
  Tally t;
  for (int i = 0; i < count; ++i) {
    const int m = uniform_int(rng, 1, 3);
    const int n = uniform_int(rng, 1, 5);
    const int ell = uniform_int(rng, 1, 3);
    const double period = uniform(rng, 1.0, 10.0);
    const HomoPoly phi = random_homo(rng, n, m, uniform_int(rng, 1, 3), period, 4, 4);
    const RVector u = random_real_vector(rng, m, 2.0);
    t.add(hj_norm(phi.evaluate_trig(u.cast<Complex>()), ell),
          graded_norm(phi, ell) * std::pow(u.norm(), n));
  }
  return t;
}

// |fg|_{H^l} <= C |f|_{H^l} |g|_{H^l}.
inline Tally product_bound(Rng& rng, int count) {
  Tally t;
  for (int i = 0; i < count; ++i) {
    const int ell = uniform_int(rng, 1, 3);
    const double period = uniform(rng, 1.0, 10.0);
    const int kmax = uniform_int(rng, 0, 8);
    const TrigPoly f = random_trig(rng, period, 1, kmax, uniform_int(rng, 1, 5));
    const TrigPoly g = random_trig(rng, period, uniform_int(rng, 1, 3), kmax, uniform_int(rng, 1, 5));
    t.add(hj_norm(trig_mul(f, g), ell), algebra_constant(ell) * hj_norm(f, ell) * hj_norm(g, ell));
  }
  return t;
}

// A q-homogeneous V with ||V||_{q,H^l} <= c / rho^q; the pointwise bound
// |V[u,..,u]| <= c (C / rho)^q |u|^q and the graded bound
// ||V[F_1,..,F_q]|| <= c (C sqrt(m) / rho)^q prod ||F_i||.
struct MultilinearTally {
  Tally pointwise;
  Tally graded;
  Tally mixed;
};

inline MultilinearTally multilinear_bounds(Rng& rng, int count) {
  MultilinearTally out;
  for (int i = 0; i < count; ++i) {
    const int q = uniform_int(rng, 2, 4);
    const int m = uniform_int(rng, 1, 3);
    const int ell = uniform_int(rng, 1, 2);
    const double period = 2.0 * kPi;
    const double cc = algebra_constant(ell);
    const double rho = uniform(rng, 0.5, 2.0);
    PolyMap v(m, m, period);
    v.add_part(random_homo(rng, q, m, m, period, 2, 4));
    const double c = graded_norm(v.part(q), ell) * std::pow(rho, q) * uniform(rng, 1.0, 1.5);

    const TrigPoly u = random_trig(rng, period, m, 3, 2);
    PolyMap lin(1, m, period);
    lin.add_term(MultiIndex({1}), u);
    const TrigPoly vu = compose(v, lin, q).part(q).coeff(MultiIndex({q}));
    out.pointwise.add(hj_norm(vu, ell), c * std::pow(cc / rho, q) * std::pow(hj_norm(u, ell), q));

    const int nv = uniform_int(rng, 1, 3);
    const int a = uniform_int(rng, 1, 3);
    PolyMap fa(nv, m, period);
    fa.add_part(random_homo(rng, a, nv, m, period, 2, 3));
    const double na = graded_norm(fa.part(a), ell);
    out.graded.add(graded_norm(compose(v, fa, q * a).part(q * a), ell),
                   c * std::pow(cc * std::sqrt(m) / rho, q) * std::pow(na, q));

    // V[F_a, F_b, .., F_b] is 1/q of the degree a + (q-1) b part of V(F_a + F_b).
    int b = uniform_int(rng, 1, 3);
    if (b == a) b = a + 1;
    PolyMap fb(nv, m, period);
    fb.add_part(random_homo(rng, b, nv, m, period, 2, 3));
    const double nb = graded_norm(fb.part(b), ell);
    const int d = a + (q - 1) * b;
    const HomoPoly mixed = compose(v, fa + fb, d).part(d) * Complex(1.0 / q);
    out.mixed.add(graded_norm(mixed, ell),
                  c * std::pow(cc * std::sqrt(m) / rho, q) * na * std::pow(nb, q - 1));
  }
  return out;
}

// ||D Phi_k . N_p||_{k-1+p} <= C k sqrt(m0) ||Phi_k||_k ||N_p||_p.
inline Tally derivative_product_bound(Rng& rng, int count) {
  Tally t;
  for (int i = 0; i < count; ++i) {
    const int m0 = uniform_int(rng, 1, 3);
    const int k = uniform_int(rng, 1, 4);
    const int p = uniform_int(rng, 1, 4);
    const int ell = uniform_int(rng, 1, 3);
    const double period = uniform(rng, 1.0, 10.0);
    const HomoPoly phi = random_homo(rng, k, m0, uniform_int(rng, 1, 3), period, 3, 4);
    const HomoPoly n = random_homo(rng, p, m0, m0, period, 3, 4);
    t.add(graded_norm(directional_derivative(phi, n), ell),
          algebra_constant(ell) * k * std::sqrt(m0) * graded_norm(phi, ell) * graded_norm(n, ell));
  }
  return t;
}

// |D_u0 Phi(u0, .) F|_{H^l} <= 2^(l + tau nu) m0 C |F|_{H^l} for |u0| <= delta.
inline Tally graph_derivative_bound(Rng& rng, const SystemSpec& sys, const UncoupleResult& res,
                                    double tau, int count) {
  Tally t;
  const int m0 = sys.m0;
  const double factor = std::pow(2.0, sys.ell + tau * res.report.nu) * m0 * res.report.algebra_C;
  for (int i = 0; i < count; ++i) {
    const TrigPoly f = random_trig(rng, sys.T, m0, uniform_int(rng, 0, 4), 3);
    HomoPoly g(0, m0, m0, sys.T);
    g.add_term(MultiIndex::zero(m0), f);
    const RVector u = random_real_vector(rng, m0, res.delta);
    TrigPoly lhs(sys.T, sys.m1);
    for (const auto& [n, h] : res.phi.parts()) {
      lhs += directional_derivative(h, g).evaluate_trig(u.cast<Complex>());
    }
    t.add(hj_norm(lhs, sys.ell), factor * hj_norm(f, sys.ell));
  }
  return t;
}

// |V(u0 + v1 + Phi) - V(u0 + Phi)|_{H^l} <= M1 |v1| (|u0| + |v1|), from
// exact Fourier data recovered by sampling in t.
inline Tally difference_bound(Rng& rng, const SystemSpec& sys, const UncoupleResult& res,
                              int count) {
  Tally t;
  const int m = sys.m();
  const int kmax = sys.V.max_abs_mode() + sys.deg_V() * std::max(res.phi.max_abs_mode(), 0);
  for (int i = 0; i < count; ++i) {
    const RVector u = random_real_vector(rng, sys.m0, res.delta);
    const RVector v = random_real_vector(rng, sys.m1, res.delta);
    const CVector uc = u.cast<Complex>();
    auto point = [&](double time, bool shifted) {
      CVector x(m);
      x.head(sys.m0) = uc;
      x.tail(sys.m1) = res.phi.is_zero() ? CVector(CVector::Zero(sys.m1))
                                         : CVector(res.phi.evaluate(uc, time));
      if (shifted) x.tail(sys.m1) += v.cast<Complex>();
      return x;
    };
    const TrigPoly diff = trig_from_samples(
        [&](double time) {
          return CVector(sys.V.evaluate(point(time, true), time) -
                         sys.V.evaluate(point(time, false), time));
        },
        sys.T, m, kmax);
    t.add(hj_norm(diff, sys.ell), res.report.M1 * v.norm() * (u.norm() + v.norm()));
  }
  return t;
}

// apply_forward(solve_coupling(F)) = F on random spectra, and
// ||Phi_n||_{n,H^j} <= C_j n^(j + tau nu) ||F_n||_{n,H^l} for j <= l + 1.
struct RoundTripTally {
  Tally residual;
  Tally bound;
  int rejected = 0;  // near-singular instances, regenerated
};

inline RoundTripTally homological_round_trips(Rng& rng, int count) {
  RoundTripTally out;
  const double tau = 1.0;
  while (out.residual.instances < count) {
    const int m0 = uniform_int(rng, 1, 4);
    const int m1 = uniform_int(rng, 1, 4);
    const bool jordan = m1 >= 2 && uniform(rng, 0, 1) < 0.25;
    SystemSpec sys = random_system(rng, m0, m1, jordan, uniform(rng, 1.0, 10.0));
    sys.ell = uniform_int(rng, 1, 2);
    const int n = uniform_int(rng, 2, 8);
    const HomoPoly f =
        random_homo(rng, n, m0, m1, sys.T, 5, uniform_int(rng, 1, 6), Codomain::E1);
    const EigenData eig = eigen_data(sys, Path::Uncouple);
    HomologicalSolution sol;
    NonresonanceReport nr;
    try {
      nr = check_nonresonance(sys, eig, tau, n, 5, Path::Uncouple, default_tol_res(eig));
      sol = solve_coupling(f, sys, eig);
    } catch (const HypothesisViolation&) {
      ++out.rejected;
      continue;
    }
    const double fn = graded_norm(f, sys.ell);
    out.residual.add(graded_norm(apply_forward(sol.phi, sys, Path::Uncouple) - f, sys.ell),
                     1e-10 * fn);
    const ConstantsReport rep = uncouple_constants(sys, eig, nr.gamma_eff, tau, 0.05);
    for (int j = 0; j <= sys.ell + 1; ++j) {
      out.bound.add(graded_norm(sol.phi, j),
                    rep.C.at(j) * std::pow(n, j + tau * eig.nu) * fn);
    }
  }
  return out;
}

}  // namespace pnf::testing
