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

#include "pnf/system.hpp"

#include <algorithm>
#include <string>

#include "pnf/error.hpp"

namespace pnf {

RMatrix SystemSpec::L() const {
  RMatrix l = RMatrix::Zero(m(), m());
  if (m0 > 0) l.topLeftCorner(m0, m0) = L0.matrix;
  if (m1 > 0) l.bottomRightCorner(m1, m1) = L1.matrix;
  return l;
}

PolyMap SystemSpec::V0() const {
  if (m0 == 0) throw std::invalid_argument("SystemSpec: E0 is empty");
  return V.components(0, m0, Codomain::E0);
}

PolyMap SystemSpec::V1() const {
  if (m1 == 0) throw std::invalid_argument("SystemSpec: E1 is empty");
  return V.components(m0, m1, Codomain::E1);
}

int SystemSpec::deg_V() const { return V.is_zero() ? 0 : V.hi(); }

int SystemSpec::max_mode() const { return V.max_abs_mode(); }

int SystemSpec::modes_needed(int p) const { return std::max(p, 1) * max_mode(); }

PolyMap zero_field(int m, double period) { return PolyMap(m, m, period); }

namespace {

void check_eigen(const LinearBlock& b, const std::string& what, int n, bool required) {
  const bool have_vals = b.eigvals.size() > 0;
  const bool have_vecs = b.eigvecs.size() > 0;
  if (!have_vals && !have_vecs) {
    if (required) throw SchemaError(what + ": eigendecomposition missing");
    return;
  }
  if (b.eigvals.size() != n) {
    throw SchemaError(what + ".eigvals: expected " + std::to_string(n) + " entries");
  }
  if (!have_vecs) {
    if (required) throw SchemaError(what + ".eigvecs: missing");
    return;
  }
  if (b.eigvecs.rows() != n || b.eigvecs.cols() != n) {
    throw SchemaError(what + ".eigvecs: expected a " + std::to_string(n) + "x" +
                      std::to_string(n) + " matrix");
  }
  const CMatrix l = b.matrix.cast<Complex>();
  const CMatrix res = l * b.eigvecs - b.eigvecs * b.eigvals.asDiagonal();
  const double scale = 1.0 + l.norm();
  if (res.norm() > 1e-8 * scale * std::max(1.0, b.eigvecs.norm())) {
    throw HypothesisViolation(what + ": supplied eigenvectors do not diagonalize the matrix");
  }
  Eigen::JacobiSVD<CMatrix> svd(b.eigvecs);
  const auto& s = svd.singularValues();
  if (s(n - 1) <= 1e-12 * s(0)) {
    throw HypothesisViolation(what + ": eigenvector matrix is singular (not diagonalizable)");
  }
}

}  // namespace

void SystemSpec::validate() const {
  if (!(T > 0.0)) throw SchemaError("T: must be positive");
  if (m0 < 0 || m1 < 0 || m() < 1) throw SchemaError("m0, m1: need m0, m1 >= 0 and m0 + m1 >= 1");
  if (L0.matrix.rows() != m0 || L0.matrix.cols() != m0) {
    throw SchemaError("L0.matrix: expected " + std::to_string(m0) + "x" + std::to_string(m0));
  }
  if (L1.matrix.rows() != m1 || L1.matrix.cols() != m1) {
    throw SchemaError("L1.matrix: expected " + std::to_string(m1) + "x" + std::to_string(m1));
  }
  if (m0 > 0) check_eigen(L0, "L0", m0, true);
  if (m1 > 0) check_eigen(L1, "L1", m1, false);
  if (L1.nu < 0 || L1.nu > std::max(m1, 1)) throw SchemaError("L1.nu: out of range");
  if (V.nvars() != m() || V.dim() != m()) {
    throw SchemaError("V: expected a map of " + std::to_string(m()) + " variables into R^" +
                      std::to_string(m()));
  }
  if (!same_period(V.period(), T)) throw SchemaError("V: coefficient period differs from T");
  if (!V.is_zero() && V.lo() < 2) throw SchemaError("V: terms must have degree >= 2");
  if (!V.real()) throw SchemaError("V: coefficients must be real-valued");
  if (!(c > 0.0)) throw SchemaError("c: must be positive");
  if (!(rho > 0.0)) throw SchemaError("rho: must be positive");
  if (ell < 1) throw SchemaError("ell: must be >= 1");
  if (epsilon_index != -1) {
    if (epsilon_index < 0 || epsilon_index >= m0) {
      throw SchemaError("epsilon_index: must index an E0 coordinate");
    }
    if (L0.matrix.row(epsilon_index).cwiseAbs().maxCoeff() != 0.0 ||
        L0.matrix.col(epsilon_index).cwiseAbs().maxCoeff() != 0.0) {
      throw SchemaError("epsilon_index: the parameter coordinate must have no linear dynamics");
    }
    for (const auto& [n, h] : V.parts()) {
      for (const auto& [a, coef] : h.coeffs()) {
        if (coef.component(epsilon_index).max_abs() != 0.0) {
          throw SchemaError("epsilon_index: the parameter coordinate must have no dynamics");
        }
      }
    }
  }
}

}  // namespace pnf
