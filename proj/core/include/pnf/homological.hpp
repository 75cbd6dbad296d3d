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

#include <cstddef>
#include <optional>

#include "pnf/spectrum.hpp"

namespace pnf {

struct HomologicalSolution {
  HomoPoly phi;
  std::optional<HomoPoly> N;
  // ||forward(phi) (+ N) - F||_{n,H^ell} / ||F||_{n,H^ell}.
  double residual = 0.0;
  // Smallest |divisor| met (inverted ones only); +inf when none.
  double min_divisor = 0.0;
  std::size_t resonant_terms = 0;
  std::size_t borderline_terms = 0;
};

// Homogeneous linear field X -> A X as a degree-1 HomoPoly.
HomoPoly linear_part(const RMatrix& a, double period);

// (A_L + d/dt) phi on the Uncouple path, where phi maps E0 -> E1 and
// A_L phi = D phi . L0 u0 - L1 phi; (B_L + d/dt) phi with
// B_L phi = D phi . L X - L phi on the Normalize path.
HomoPoly apply_forward(const HomoPoly& phi, const SystemSpec& sys, Path path);

// f(A z): substitution of a linear change of variables.
HomoPoly substitute_linear(const HomoPoly& f, const CMatrix& a, bool a_is_real);

// Solves (A_L + d/dt) phi = F for F: E0 -> E1 homogeneous. Per mode k and
// eigen-monomial z^alpha the m1 x m1 system
// ((<alpha, lambda0> + i k 2pi/T) I - L1) phi = f is solved densely.
// Throws HypothesisViolation when a system has condition number > 1e12 and
// ToleranceFailure when the forward residual exceeds 1e-10.
HomologicalSolution solve_coupling(const HomoPoly& F, const SystemSpec& sys, const EigenData& eig);

// Splits F: R^m -> R^m into (B_L + d/dt) phi + N with N spanned by the
// resonant eigen-monomials (|divisor| <= tol_res) and phi orthogonal to them.
HomologicalSolution split_normal(const HomoPoly& F, const SystemSpec& sys, const EigenData& eig,
                                 double tol_res);

// <P, Q> = sum_alpha alpha! conj(P_alpha^(k)) . Q_alpha^(k), the scalar
// product P(d/dX)^* Q(X) at X = 0 on Fourier mode k.
Complex scalar_product(const HomoPoly& p, const HomoPoly& q, int k);

}  // namespace pnf
