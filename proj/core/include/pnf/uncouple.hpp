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
#include <vector>

#include "pnf/homological.hpp"

namespace pnf {

struct UncoupleOptions {
  double delta = 0.05;
  int p = 0;       // 0: use p_opt
  int d_max = 0;   // 0: min(deg_V p, p + 2 deg_V)
  double tau = 1.0;
  double tol_res = 0.0;  // <= 0: default from the spectrum
  int p_cap = 60;
};

int default_d_max(int deg_v, int p);

// u0 -> (u0, phi(u0, t)) as a map E0 -> R^m.
PolyMap embed_graph(const PolyMap& phi, int m0, int m1);

// V1(u0 + phi) - D phi . V0(u0 + phi) through degree max_deg.
PolyMap uncouple_rhs(const SystemSpec& sys, const PolyMap& phi, int max_deg);

// (A_L + d/dt) phi, degree by degree.
PolyMap apply_forward(const PolyMap& phi, const SystemSpec& sys, Path path);

// Degree-by-degree construction of phi_2 .. phi_p.
PolyMap build_phi(const SystemSpec& sys, const EigenData& eig, int p);

// (Id - Pi_p) of uncouple_rhs through d_max.
PolyMap compute_remainder(const SystemSpec& sys, const PolyMap& phi, int p, int d_max);

// Largest |coefficient| of uncouple_rhs - forward(phi) - R through d_max,
// relative to the largest coefficient of uncouple_rhs.
double identity_residual(const SystemSpec& sys, const PolyMap& phi, const PolyMap& r, int d_max);

int choose_p_opt(double delta, const ConstantsReport& report);

// The system in the variables (u0, v1) after u1 = v1 + phi(u0, t):
//   du0/dt = L0 u0 + V0t(u0, v1, t)
//   dv1/dt = L1 v1 + V1t(u0, v1, t) + R(u0, t)
struct Transformed {
  PolyMap V0t;  // m variables -> E0
  PolyMap V1t;  // m variables -> E1
  PolyMap R;    // m0 variables -> E1
  int d_max = 0;
  // Largest coefficient of V1t with no v1 factor, relative to |V1t|.
  double v1_free_residual = 0.0;
};

Transformed transform(const SystemSpec& sys, const PolyMap& phi, const PolyMap& r, int d_max);

// max over random points with |u0|, |v1| <= radius of
// |V1t(u0, v1, .)|_{H^ell} / (|v1| (|u0| + |v1|)).
double sampled_v1_constant(const Transformed& tr, int m0, int ell, double radius, int samples,
                           std::uint64_t seed);

struct UncoupleResult {
  PolyMap phi;
  PolyMap R;
  // The degree-2 solve, kept even when p < 2.
  PolyMap phi_2;
  int p = 0;
  int d_max = 0;
  double delta = 0.0;
  ConstantsReport report;
  NonresonanceReport nonres;
  std::map<int, double> phi_norms;    // ||phi_n||_{n,H^ell}
  std::map<int, double> gevrey_ratio; // phi_n / Gevrey bound
  double identity_residual = 0.0;
  double certified_bound = 0.0;
  std::vector<std::string> warnings;
};

// Scans divisors, evaluates constants, builds phi and R.
UncoupleResult uncouple(const SystemSpec& sys, const UncoupleOptions& opt);

struct EpsilonSplit {
  PolyMap phi;      // augmented run
  PolyMap phi_A;    // epsilon-degree-0 part, parameter variable removed
  PolyMap phi_BC;   // (phi - phi_A) / epsilon
  PolyMap phi_reduced;  // run on the system with the parameter dropped
  double autonomy_gap = 0.0;   // time-dependent content at epsilon-degree 0
  double reduced_gap = 0.0;    // |phi_A - phi_reduced| relative
  double max_gap = 0.0;
};

// The system obtained by setting the parameter coordinate to zero and
// dropping it.
SystemSpec drop_parameter(const SystemSpec& sys);

EpsilonSplit epsilon_split(const SystemSpec& sys, int p);

}  // namespace pnf
