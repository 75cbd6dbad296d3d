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

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pnf/homological.hpp"

namespace pnf {

struct NormalFormOptions {
  double delta = 0.05;
  int p = 0;      // 0: p_opt from the constants
  int d_max = 0;  // 0: default
  double tau = 1.0;
  double tol_res = 0.0;  // 0: default_tol_res
  int p_cap = 60;
  int criteria_samples = 64;
  std::uint64_t seed = 12345;
};

struct PhiN {
  PolyMap phi;
  PolyMap N;
  std::size_t resonant_terms = 0;
  std::size_t borderline_terms = 0;
};

// V(X + phi) - D phi . N through max_deg.
PolyMap nf_rhs(const SystemSpec& sys, const PolyMap& phi, const PolyMap& N, int max_deg);

// Degree-by-degree construction of (phi, N) for n = 2..p. When c_ell > 0 the
// per-degree bounds ||N_n|| <= ||RHS_n|| and ||phi_n|| <= c_ell n^(ell+tau) ||RHS_n||
// are checked and a ToleranceFailure is raised on violation.
PhiN build_phi_N(const SystemSpec& sys, const EigenData& eig, int p, double tol_res,
                 double c_ell = 0.0, double tau = 1.0);

// Solves (Id + D phi) R = (Id - Pi_p)(V(X + phi) - D phi . N) by the graded
// Neumann series, through d_max.
PolyMap nf_remainder(const SystemSpec& sys, const PolyMap& phi, const PolyMap& N, int p, int d_max);

// V(X + phi) - (d/dt + B_L) phi - (Id + D phi)(N + R), through d_max, relative
// to the largest coefficient of V(X + phi).
double conjugacy_residual(const SystemSpec& sys, const PolyMap& phi, const PolyMap& N,
                          const PolyMap& R, int d_max);

// Sampled max over (y, t) of |e^(tL*) N(e^(-tL*) y, t) - N(y, 0)|, with the
// exponentials taken through the unitary eigenbasis. With literal set the
// opposite sign convention e^(-tL*) N(e^(tL*) y, t) is sampled instead.
double check_criteria(const PolyMap& N, const EigenData& eig, int samples, std::uint64_t seed,
                      bool literal = false);

// max_n ||d/dt N_n - B_{L*} N_n|| / max(1, ||N_n||), graded H^ell norms.
double coefficient_criteria_residual(const PolyMap& N, const SystemSpec& sys);

struct NormalFormResult {
  PolyMap phi;
  PolyMap N;
  PolyMap R;
  int p = 0;
  int d_max = 0;
  double delta = 0.0;
  ConstantsReport report;
  NonresonanceReport nonres;
  std::map<int, double> phi_norms;
  std::map<int, double> N_norms;
  double conjugacy_residual = 0.0;
  double criteria_residual = 0.0;
  double literal_criteria_residual = 0.0;
  double coefficient_criteria_residual = 0.0;
  double certified_bound = 0.0;
  std::vector<std::string> warnings;
};

NormalFormResult normalize(const SystemSpec& sys, const NormalFormOptions& opt);

}  // namespace pnf
