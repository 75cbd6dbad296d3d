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
#include <map>
#include <string>
#include <vector>

#include "pnf/system.hpp"

namespace pnf {

// Uncouple: invariant-manifold construction with L0 / L1 split.
// Normalize: normal form for the full L.
enum class Path { Uncouple, Normalize };

const char* path_name(Path p);

struct EigenData {
  Path path = Path::Uncouple;
  // Uncouple path.
  CVector lambda0;
  CVector lambda1;
  CMatrix P0;  // L0 = P0 diag(lambda0) P0^-1
  CMatrix P0inv;
  // Normalize path: L = P diag(lambda) P^*, P unitary.
  CVector lambda;
  CMatrix P;
  CMatrix Pinv;
  int nu = 1;
  double Lambda = 0.0;
};

// Largest Jordan block via rank stabilisation of (A - mu)^s.
int jordan_max_block(const RMatrix& a, double tol = 1e-8);

// Throws HypothesisViolation when the path's structural hypotheses fail:
// L0 not diagonalizable (Uncouple), L not normal (Normalize).
EigenData eigen_data(const SystemSpec& sys, Path path);

double default_tol_res(const EigenData& eig);

// <a, source> + i k (2 pi / T) - target.
Complex divisor(const MultiIndex& a, int k, const CVector& source, Complex target, double period);
// Path-aware form: source lambda0 / target lambda1_j on Uncouple, lambda /
// lambda_j on Normalize.
Complex divisor(const MultiIndex& a, int k, int j, const EigenData& eig, double period);

struct DivisorTuple {
  MultiIndex a;
  int k = 0;
  int j = 0;
  Complex value;
  double weighted = 0.0;  // |value| (|a| + |k|)^tau
};

struct NonresonanceReport {
  Path path = Path::Uncouple;
  double tau = 1.0;
  double tol_res = 0.0;
  int degree_max = 0;
  int fourier_max = 0;
  std::size_t scanned = 0;
  // +inf when no non-resonant divisor was scanned.
  double gamma_eff = 0.0;
  bool has_worst = false;
  DivisorTuple worst;
  std::vector<DivisorTuple> resonant;
  std::vector<DivisorTuple> borderline;
  bool literal_hypothesis_holds() const { return resonant.empty(); }
};

// Scans every (a, k, j) with 2 <= |a| <= degree_max and |k| <= fourier_max.
// On the Uncouple path a resonant tuple throws HypothesisViolation unless
// `allow_resonance` is set.
NonresonanceReport check_nonresonance(const SystemSpec& sys, const EigenData& eig, double tau,
                                      int degree_max, int fourier_max, Path path,
                                      double tol_res, bool allow_resonance = false);

struct ConstantsReport {
  Path path = Path::Uncouple;
  double delta = 0.0;
  double Lambda = 0.0;
  int nu = 1;
  double gamma_eff = 0.0;
  double tau = 1.0;
  int ell = 1;
  double b = 0.0;
  std::vector<double> C;  // C_j, j = 0 .. ell + 1
  double algebra_C = 0.0;
  int p_opt = 1;
  double omega = 0.0;
  bool delta_in_range = true;
  bool exponent_condition = true;  // tau nu <= ell, resp. tau <= ell
  // Uncouple path.
  double K = 0.0;
  double delta0 = 0.0;
  double M = 0.0;
  double M1 = 0.0;
  double M0 = 0.0;
  // Normalize path.
  double bold_C = 0.0;
  double M_prime = 0.0;
  double stirling_sup = 0.0;
  double stirling_limit = 0.0;

  double C_ell() const { return C.at(ell); }
  // M exp(-omega / delta^b), resp. M' delta^2 exp(-omega / delta^b).
  double remainder_bound(double d) const;
  // Gevrey bound sqrt(m0) K^(n-1) (n!)^(ell + 1 + tau nu).
  double gevrey_bound(int n, int m0) const;
  int p_opt_at(double d) const;

  std::map<std::string, double> values() const;
  std::map<std::string, std::string> notes() const;
};

// ceil(x) that ignores rounding noise when x is within 1e-12 of an integer,
// clamped to >= 1.
int snapped_ceil(double x);

ConstantsReport uncouple_constants(const SystemSpec& sys, const EigenData& eig, double gamma_eff,
                                double tau, double delta);
ConstantsReport normalform_constants(const SystemSpec& sys, const EigenData& eig, double gamma_eff,
                                double tau, double delta);

// sup_{1 <= p <= pmax} e^2 p! / (p^(p + 1/2) e^-p). Throws ToleranceFailure
// if the scanned sequence is not eventually decreasing towards its Stirling
// limit e^2 sqrt(2 pi).
double stirling_sup(int pmax = 200);

}  // namespace pnf
