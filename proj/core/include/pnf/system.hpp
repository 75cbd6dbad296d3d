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
#include <string>

#include "pnf/algebra.hpp"

namespace pnf {

// A real square matrix with optional spectral data. Eigenvectors are the
// columns of `eigvecs`; empty members mean "not supplied".
struct LinearBlock {
  RMatrix matrix;
  CVector eigvals;
  CMatrix eigvecs;
  int nu = 0;  // largest Jordan block, 0 when not supplied
};

// du/dt = L u + V(u, t) with u = (u0, u1) in E0 x E1 = R^m0 x R^m1 and
// L = diag(L0, L1). V starts at degree 2 and has finite Fourier support.
struct SystemSpec {
  std::string name;
  double T = 2.0 * kPi;
  int m0 = 0;
  int m1 = 0;
  LinearBlock L0;
  LinearBlock L1;
  PolyMap V;
  double c = 1.0;
  double rho = 1.0;
  int ell = 1;
  // Position in E0 of an adjoined parameter coordinate, -1 when absent.
  int epsilon_index = -1;
  std::map<std::string, double> params;

  int m() const { return m0 + m1; }
  RMatrix L() const;
  // Components of V in E0 (resp. E1), as maps of all m variables.
  PolyMap V0() const;
  PolyMap V1() const;
  int deg_V() const;
  int max_mode() const;
  // Largest Fourier mode reachable when building maps of degree <= p.
  int modes_needed(int p) const;

  // Throws SchemaError on shape problems and HypothesisViolation when the
  // supplied eigen-decomposition does not match the matrix.
  void validate() const;
};

// Zero field with the given shape; a convenience for building systems.
PolyMap zero_field(int m, double period);

}  // namespace pnf
