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

#include "pnf/error.hpp"
#include "pnf/fixtures.hpp"
#include "pnf/homological.hpp"
#include "pnf/normalform.hpp"
#include "pnf/norms.hpp"
#include "support.hpp"

using namespace pnf;
using pnf::testing::Rng;

namespace {

constexpr double kT = 2.0 * kPi;

HomoPoly to_eigen(const HomoPoly& h, const EigenData& eig) {
  return substitute_linear(h, eig.P, false).transformed(eig.Pinv, false);
}

SystemSpec autonomous_hopf(double period) {
  SystemSpec s = hopf_fixture();
  s.T = period;
  PolyMap v(2, 2, period);
  for (const auto& [n, h] : s.V.parts()) {
    for (const auto& [a, c] : h.coeffs()) {
      TrigPoly k0(period, 2);
      k0.add_to_mode(0, c.mode(0));
      v.add_term(a, k0.mark_real());
    }
  }
  s.V = v;
  return s;
}

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
  Rng rng(71);
  s.V = testing::random_map(rng, 2, 3, 2, 2, kT, 2, 3);
  return s;
}

}  // namespace

TEST_CASE("Hopf normal form keeps only resonant cubic terms") {
  const SystemSpec s = hopf_fixture();
  const EigenData eig = eigen_data(s, Path::Normalize);
  const double tol = default_tol_res(eig);
  const PhiN r = build_phi_N(s, eig, 3, tol);
  CHECK(r.N.part(2).is_zero());
  CHECK(r.N.max_abs_mode() == 0);
  CHECK(r.resonant_terms > 0);
  const HomoPoly n3 = to_eigen(r.N.part(3), eig);
  CHECK_FALSE(n3.is_zero());
  for (const auto& [a, c] : n3.coeffs()) {
    for (const auto& [k, v] : c.modes()) {
      for (int j = 0; j < 2; ++j) {
        if (std::abs(v[j]) < 1e-14) continue;
        CHECK(k == 0);
        // alpha_1 - alpha_2 = +1 for the first eigen-direction, -1 for the second.
        CHECK(a[0] - a[1] == (j == 0 ? 1 : -1));
      }
    }
  }
}

TEST_CASE("zero field and non-resonant spectra") {
  SystemSpec z = hopf_fixture();
  z.V = PolyMap(2, 2, kT);
  const EigenData ez = eigen_data(z, Path::Normalize);
  const PhiN zr = build_phi_N(z, ez, 4, default_tol_res(ez));
  CHECK(zr.phi.max_abs() == 0.0);
  CHECK(zr.N.max_abs() == 0.0);

  const SystemSpec d = diagonal_system();
  const EigenData ed = eigen_data(d, Path::Normalize);
  const PhiN dr = build_phi_N(d, ed, 4, default_tol_res(ed));
  CHECK(dr.N.max_abs() == 0.0);
  CHECK(dr.resonant_terms == 0);
  // Degree 2: plain inverse of the forward operator.
  CHECK(graded_norm(apply_forward(dr.phi.part(2), d, Path::Normalize) - d.V.part(2), 0) < 1e-13);
}

TEST_CASE("nf_remainder with zero transformation") {
  const SystemSpec s = hopf_fixture();
  const PolyMap zero(2, 2, kT);
  const PolyMap r = nf_remainder(s, zero, zero, 2, 6);
  CHECK(max_difference(r, project(s.V, 3, kNoDegreeCap)) < 1e-15);
}

TEST_CASE("nf_remainder Neumann expansion") {
  SystemSpec s = hopf_fixture();
  s.V = PolyMap(2, 2, kT);
  Rng rng(73);
  const int p = 3;
  const HomoPoly phi2 = testing::random_homo(rng, 2, 2, 2, kT, 1, 3);
  const HomoPoly n3 = testing::random_homo(rng, 3, 2, 2, kT, 1, 3);
  PolyMap phi(2, 2, kT), nn(2, 2, kT);
  phi.add_part(phi2);
  nn.add_part(n3);
  const PolyMap r = nf_remainder(s, phi, nn, p, 7);
  // RHS = -D phi2 . n3 (degree 4); R = RHS - D phi2 . RHS + D phi2 . (D phi2 . RHS) ...
  HomoPoly term = directional_derivative(phi2, n3) * Complex(-1.0);
  PolyMap want(2, 2, kT);
  for (int d = 4; d <= 7; ++d) {
    want.add_part(term);
    term = directional_derivative(phi2, term) * Complex(-1.0);
  }
  CHECK(max_difference(r, want) <= 1e-13 * (1.0 + want.max_abs()));
}

TEST_CASE("conjugacy identity on fixtures") {
  for (const SystemSpec& s : {hopf_fixture(), one_to_one_fixture()}) {
    const EigenData eig = eigen_data(s, Path::Normalize);
    for (int p = 2; p <= 4; ++p) {
      const PhiN r = build_phi_N(s, eig, p, default_tol_res(eig));
      const PolyMap rem = nf_remainder(s, r.phi, r.N, p, 2 * p + 2);
      CHECK((rem.is_zero() || rem.lo() > p));
      CHECK(conjugacy_residual(s, r.phi, r.N, rem, 2 * p + 2) <= 1e-10);
    }
  }
}

TEST_CASE("criteria on the Hopf normal form") {
  const SystemSpec s = hopf_fixture();
  const EigenData eig = eigen_data(s, Path::Normalize);
  CHECK(check_criteria(PolyMap(2, 2, kT), eig, 32, 1) == 0.0);

  const PhiN r = build_phi_N(s, eig, 3, default_tol_res(eig));
  CHECK(check_criteria(r.N, eig, 64, 5) < 1e-10);
  CHECK(check_criteria(r.N, eig, 64, 5, true) < 1e-10);
  CHECK(coefficient_criteria_residual(r.N, s) < 1e-10);

  // Injecting one non-resonant monomial breaks the commutation.
  PolyMap bad = r.N;
  CVector e(2);
  e << 1.0, 0.0;
  bad.add_term(MultiIndex({2, 0}), TrigPoly::constant(kT, e));
  CHECK(check_criteria(bad, eig, 64, 5) > 1e-3);
  CHECK(coefficient_criteria_residual(bad, s) > 1e-3);
}

TEST_CASE("criteria on the forced 1:1 resonance") {
  const SystemSpec s = one_to_one_fixture();
  const EigenData eig = eigen_data(s, Path::Normalize);
  const PhiN r = build_phi_N(s, eig, 3, default_tol_res(eig));
  CHECK(r.N.max_abs_mode() > 0);
  CHECK(check_criteria(r.N, eig, 64, 5) < 1e-9);
  CHECK(coefficient_criteria_residual(r.N, s) < 1e-10);
  // The literal sign convention does not hold for time-dependent resonances.
  CHECK(check_criteria(r.N, eig, 64, 5, true) > 1e-3);
}

TEST_CASE("normalize driver") {
  const SystemSpec s = hopf_fixture();
  const NormalFormResult res = normalize(s, {.delta = 0.05, .p = 4});
  CHECK(res.p == 4);
  CHECK(res.conjugacy_residual <= 1e-10);
  CHECK(res.criteria_residual <= 1e-9);
  CHECK(res.coefficient_criteria_residual <= 1e-10);
  CHECK((res.N.is_zero() || res.N.lo() >= 2));
  CHECK((res.R.is_zero() || res.R.lo() >= 5));
  CHECK(res.certified_bound > 0.0);

  const NormalFormResult opt = normalize(s, {.delta = 0.05});
  CHECK(opt.p == std::min(opt.report.p_opt, 60));

  CHECK_THROWS_AS(normalize(two_dof_forced_fixture(), {.delta = 0.05}), HypothesisViolation);
}

TEST_CASE("remainder bound on the normalize path") {
  const SystemSpec s = hopf_fixture();
  for (double delta : {0.05, 0.02, 0.01}) {
    const NormalFormResult res = normalize(s, {.delta = delta});
    CHECK(res.certified_bound <= res.report.remainder_bound(delta));
  }
}

TEST_CASE("autonomous input gives autonomous output for any period") {
  const NormalFormResult a = normalize(autonomous_hopf(kT), {.delta = 0.05, .p = 4});
  const NormalFormResult b = normalize(autonomous_hopf(3.0), {.delta = 0.05, .p = 4});
  CHECK(a.phi.max_abs_mode() == 0);
  CHECK(a.N.max_abs_mode() == 0);
  CHECK(a.R.max_abs_mode() == 0);
  // The k = 0 slice does not see the period.
  CHECK(std::abs(a.N.part(3).coeff(MultiIndex({3, 0})).mode(0)[0] -
                 b.N.part(3).coeff(MultiIndex({3, 0})).mode(0)[0]) < 1e-14);
  for (int n = 2; n <= 4; ++n) {
    const HomoPoly pa = a.phi.part(n);
    const HomoPoly pb = b.phi.part(n);
    for (const auto& [al, c] : pa.coeffs()) {
      CHECK((c.mode(0) - pb.coeff(al).mode(0)).norm() < 1e-13);
    }
  }
}
