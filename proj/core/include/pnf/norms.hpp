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

#include <map>

#include "pnf/algebra.hpp"

namespace pnf {

// sqrt(sum_k (1 + k^2)^j |f^(k)|^2), Euclidean norm on each mode.
double hj_norm(const TrigPoly& f, int j);

// alpha!/n!, computed through log-factorials.
double factorial_weight(const MultiIndex& alpha);

// |P|_{2,n} for a time-independent homogeneous polynomial. Throws
// std::invalid_argument when a coefficient has a nonzero mode k != 0.
double two_n_norm(const HomoPoly& p);

// |F^(k)|_{2,n}: the same weighted sum restricted to Fourier mode k.
double two_n_norm_mode(const HomoPoly& f, int k);

// ||F||_{n,H^j}. Evaluated both as a weighted sum of H^j norms and as a
// Sobolev-weighted sum of |F^(k)|_{2,n}; throws ToleranceFailure when the
// two disagree beyond 1e-10 relative.
double graded_norm(const HomoPoly& f, int j);

// Degree -> ||F_n||_{n,H^j} over the stored parts.
std::map<int, double> graded_norms(const PolyMap& f, int j);

// 2^ell * sqrt(sum_k (1 + k^2)^-ell). The constant does not depend on the
// period since the Sobolev weights use the integer mode index.
double algebra_constant(int ell);

// sum_n ||R_n||_{n,H^ell} delta^n, an upper bound for sup_{|x|<=delta}
// |R(x, .)|_{H^ell}.
double certified_sup_bound(const PolyMap& r, double delta, int ell);

}  // namespace pnf
