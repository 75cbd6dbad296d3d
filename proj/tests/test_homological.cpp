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

#include <doctest.h>

#include <cmath>

#include "checks.hpp"
#include "pnf/fixtures.hpp"
#include "pnf/homological.hpp"

using namespace pnf;
using pnf::testing::Rng;

namespace {

constexpr double kT = 2.0 * kPi;

TrigPoly cos_t() { return TrigPoly::scalar(kT, {{-1, 0.5}, {1, 0.5}}).mark_real(); }
TrigPoly sin_t() {
  return TrigPoly::scalar(kT, {{-1, Complex(0, 0.5)}, {1, Complex(0, -0.5)}}).mark_real();
}

double diff(const HomoPoly& a, const HomoPoly& b) {
  return graded_norm(a - b, 0);
}

// Diagonal linear part with no resonances among degree-2..4 monomials.
SystemSpec diagonal_system() {
  SystemSpec s;
  s.T = kT;
  s.m0 = 2;
  s.m1 = 0;
  s.L0.matrix = RMatrix::Zero(2, 2);
  s.L0.matrix(0, 0) = -1.0;
  s.L0.matrix(1, 1) = -std::sqrt(3.0);
  s.L0.eigvals = s.L0.matrix.diagonal().cast<Complex>();
  s.L0.eigvecs = CMatrix::Identity(2, 2);
  s.L1.matrix = RMatrix(0, 0);
  s.V = PolyMap(2, 2, kT);
  return s;
}

HomoPoly to_eigen(const HomoPoly& h, const EigenData& eig) {
  return substitute_linear(h, eig.P, false).transformed(eig.Pinv, false);
}

}  // namespace

TEST_CASE("apply_forward on the coupling operator") {
  const SystemSpec s = basic_fixture();
  Rng rng(41);
  const TrigPoly phi = testing::random_trig(rng, kT, 1, 3);
  HomoPoly h(2, 1, 1, kT, Codomain::E1);
  h.add_term(MultiIndex({2}), phi);
  const HomoPoly got = apply_forward(h, s, Path::Uncouple);
  HomoPoly want(2, 1, 1, kT, Codomain::E1);
  want.add_term(MultiIndex({2}), phi.derivative() + phi);
  CHECK(diff(got, want) < 1e-14);

  // Time-independent input: no derivative contribution.
  HomoPoly c(2, 1, 1, kT, Codomain::E1);
  c.add_term(MultiIndex({2}), TrigPoly::scalar(kT, {{0, 3.0}}).mark_real());
  CHECK(diff(apply_forward(c, s, Path::Uncouple), c) < 1e-15);
}

TEST_CASE("apply_forward on eigen-monomials") {
  const SystemSpec s = diagonal_system();
  const EigenData eig = eigen_data(s, Path::Normalize);
  for (const auto& a : enumerate_indices(2, 3)) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 1; k <= 2; ++k) {
        CVector e = CVector::Zero(2);
        e[j] = Complex(0.3, -0.7);
        TrigPoly c(kT, 2);
        c.add_to_mode(k, e);
        c.add_to_mode(-k, e.conjugate());
        c.mark_real();
        HomoPoly h(3, 2, 2, kT);
        h.add_term(a, c);
        const TrigPoly out = apply_forward(h, s, Path::Normalize).coeff(a);
        const Complex d = divisor(a, k, eig.lambda, eig.lambda[j], kT);
        CHECK(std::abs(out.mode(k)[j] - d * e[j]) < 1e-14);
        CHECK(std::abs(out.mode(-k)[j] - std::conj(d) * std::conj(e[j])) < 1e-14);
      }
    }
  }
}

TEST_CASE("solve_coupling examples") {
  const SystemSpec s = basic_fixture();
  const EigenData eig = eigen_data(s, Path::Uncouple);
  HomoPoly f(2, 1, 1, kT, Codomain::E1);
  f.add_term(MultiIndex({2}), cos_t());
  const HomologicalSolution sol = solve_coupling(f, s, eig);
  HomoPoly want(2, 1, 1, kT, Codomain::E1);
  want.add_term(MultiIndex({2}), (cos_t() + sin_t()) * 0.5);
  CHECK(diff(sol.phi, want) < 1e-15);
  CHECK(sol.residual < 1e-15);
  CHECK(sol.min_divisor == doctest::Approx(std::sqrt(2.0)));
  CHECK_FALSE(sol.N.has_value());

  const HomologicalSolution zero = solve_coupling(HomoPoly(3, 1, 1, kT, Codomain::E1), s, eig);
  CHECK(zero.phi.is_zero());
}

TEST_CASE("solve_coupling on time-independent data") {
  Rng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    SystemSpec s = testing::random_system(rng, 2, 2, trial % 3 == 0, kT);
    const EigenData eig = eigen_data(s, Path::Uncouple);
    const HomoPoly f = testing::random_homo(rng, 2, 2, 2, kT, 0, 3, Codomain::E1);
    const HomologicalSolution sol = solve_coupling(f, s, eig);
    CHECK(sol.phi.max_abs_mode() == 0);
    // In L0-eigen coordinates each coefficient is (<alpha, lambda0> - L1)^-1 f_alpha.
    const HomoPoly fe = substitute_linear(f, eig.P0, false);
    const HomoPoly pe = substitute_linear(sol.phi, eig.P0, false);
    for (const auto& [a, c] : fe.coeffs()) {
      Complex dot = 0.0;
      for (int i = 0; i < 2; ++i) dot += static_cast<double>(a[i]) * eig.lambda0[i];
      const CMatrix m = dot * CMatrix::Identity(2, 2) - s.L1.matrix.cast<Complex>();
      const CVector x = m.fullPivLu().solve(c.mode(0));
      CHECK((pe.coeff(a).mode(0) - x).norm() <= 1e-12 * (1.0 + x.norm()));
    }
  }
}

TEST_CASE("solve_coupling rejects a singular system") {
  const SystemSpec s = resonant_fixture();
  const EigenData eig = eigen_data(s, Path::Uncouple);
  HomoPoly f(2, 1, 1, s.T, Codomain::E1);
  f.add_term(MultiIndex({2}), TrigPoly::scalar(s.T, {{0, 1.0}}).mark_real());
  CHECK_THROWS_AS(solve_coupling(f, s, eig), HypothesisViolation);
}

TEST_CASE("round trip and solution bound on random spectra") {
  Rng rng(45);
  const auto t = testing::homological_round_trips(rng, 200);
  CHECK(t.residual.violations == 0);
  CHECK(t.bound.violations == 0);
  CHECK(t.residual.worst < 1.0);
}

TEST_CASE("split_normal on the Hopf cubic") {
  const SystemSpec s = hopf_fixture();
  const EigenData eig = eigen_data(s, Path::Normalize);
  // -(x^2 + y^2)(x, y) commutes with rotations: wholly resonant.
  const HomoPoly f = s.V.part(3);
  const HomologicalSolution sol = split_normal(f, s, eig, default_tol_res(eig));
  REQUIRE(sol.N.has_value());
  CHECK(diff(*sol.N, f) < 1e-14);
  CHECK(graded_norm(sol.phi, 0) < 1e-14);
  CHECK(sol.resonant_terms > 0);
}

TEST_CASE("split_normal without resonances inverts fully") {
  const SystemSpec s = diagonal_system();
  const EigenData eig = eigen_data(s, Path::Normalize);
  Rng rng(47);
  for (int n = 2; n <= 4; ++n) {
    const HomoPoly f = testing::random_homo(rng, n, 2, 2, kT, 3, 5);
    const HomologicalSolution sol = split_normal(f, s, eig, default_tol_res(eig));
    CHECK(sol.resonant_terms == 0);
    CHECK(sol.N->is_zero());
    CHECK(diff(apply_forward(sol.phi, s, Path::Normalize), f) <= 1e-13 * graded_norm(f, 0));
  }
}

TEST_CASE("split_normal on the 1:1 resonance matches a brute-force scan") {
  const SystemSpec s = one_to_one_fixture();
  const EigenData eig = eigen_data(s, Path::Normalize);
  const double tol = default_tol_res(eig);
  Rng rng(49);
  for (int n = 2; n <= 4; ++n) {
    // Dense data: every monomial and every mode |k| <= 2 in both components.
    HomoPoly f(n, 2, 2, s.T);
    for (const auto& a : enumerate_indices(2, n)) {
      TrigPoly c(s.T, 2);
      for (int k = 0; k <= 2; ++k) {
        CVector v(2);
        v << testing::random_complex(rng), testing::random_complex(rng);
        if (k == 0) {
          c.add_to_mode(0, v.real().cast<Complex>());
        } else {
          c.add_to_mode(k, v);
          c.add_to_mode(-k, v.conjugate());
        }
      }
      f.add_term(a, c.mark_real());
    }
    const HomologicalSolution sol = split_normal(f, s, eig, tol);
    std::size_t brute = 0;
    for (const auto& a : enumerate_indices(2, n)) {
      for (int k = -2; k <= 2; ++k) {
        for (int j = 0; j < 2; ++j) {
          if (std::abs(divisor(a, k, eig.lambda, eig.lambda[j], s.T)) <= tol) ++brute;
        }
      }
    }
    CHECK(sol.resonant_terms == brute);
    CHECK(brute > 0);

    // Split identity, orthogonality and minimality in eigen coordinates.
    CHECK(diff(apply_forward(sol.phi, s, Path::Normalize) + *sol.N, f) <=
          1e-13 * graded_norm(f, 0));
    const HomoPoly ne = to_eigen(*sol.N, eig);
    const HomoPoly pe = to_eigen(sol.phi, eig);
    for (int trial = 0; trial < 5; ++trial) {
      const HomoPoly q = testing::random_homo(rng, n, 2, 2, s.T, 2, 4);
      const HomoPoly bq = to_eigen(apply_forward(q, s, Path::Normalize), eig);
      for (int k = -4; k <= 4; ++k) CHECK(std::abs(scalar_product(ne, bq, k)) < 1e-12);
    }
    for (const auto& [a, c] : pe.coeffs()) {
      for (const auto& [k, v] : c.modes()) {
        for (int j = 0; j < 2; ++j) {
          if (std::abs(divisor(a, k, eig.lambda, eig.lambda[j], s.T)) <= tol) {
            CHECK(std::abs(v[j]) < 1e-14);
          }
        }
      }
    }
  }
}

TEST_CASE("split_normal bounds") {
  Rng rng(51);
  for (const SystemSpec& s : {hopf_fixture(), one_to_one_fixture()}) {
    const EigenData eig = eigen_data(s, Path::Normalize);
    const double tol = default_tol_res(eig);
    for (int n = 2; n <= 5; ++n) {
      const HomoPoly f = testing::random_homo(rng, n, 2, 2, s.T, 3, 6);
      const HomologicalSolution sol = split_normal(f, s, eig, tol);
      const auto nr = check_nonresonance(s, eig, 1.0, n, 3, Path::Normalize, tol);
      for (int k = -3; k <= 3; ++k) {
        const double fk = two_n_norm_mode(f, k);
        CHECK(two_n_norm_mode(*sol.N, k) <= fk * (1.0 + 1e-12));
        CHECK(two_n_norm_mode(sol.phi, k) <=
              std::pow(n + std::abs(k), 1.0) / nr.gamma_eff * fk * (1.0 + 1e-12));
      }
      const ConstantsReport rep = normalform_constants(s, eig, nr.gamma_eff, 1.0, 0.05);
      for (int j = 0; j <= s.ell + 1; ++j) {
        CHECK(graded_norm(sol.phi, j) <=
              rep.C.at(j) * std::pow(n, j + 1.0) * graded_norm(f, s.ell) * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("scalar_product") {
  HomoPoly p(2, 2, 1, kT);
  p.add_term(MultiIndex({2, 0}), TrigPoly::scalar(kT, {{0, 1.0}}));
  p.add_term(MultiIndex({1, 1}), TrigPoly::scalar(kT, {{0, Complex(0, 1)}}));
  // <X1^2, X1^2> = 2!, <X1 X2, X1 X2> = 1.
  CHECK(std::abs(scalar_product(p, p, 0) - 3.0) < 1e-15);
  CHECK(std::abs(scalar_product(p, p, 1)) == 0.0);
}
