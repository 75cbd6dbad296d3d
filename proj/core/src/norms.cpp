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

#include "pnf/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pnf/error.hpp"

namespace pnf {

namespace {

double sobolev_weight(int k, int j) {
  return std::pow(1.0 + static_cast<double>(k) * k, j);
}

}  // namespace

double hj_norm(const TrigPoly& f, int j) {
  if (j < 0) throw std::invalid_argument("hj_norm: negative Sobolev index");
  double s = 0.0;
  for (const auto& [k, c] : f.modes()) s += sobolev_weight(k, j) * c.squaredNorm();
  return std::sqrt(s);
}

double factorial_weight(const MultiIndex& alpha) {
  return std::exp(alpha.log_factorial() - std::lgamma(alpha.degree() + 1.0));
}

double two_n_norm_mode(const HomoPoly& f, int k) {
  double s = 0.0;
  for (const auto& [a, c] : f.coeffs()) {
    auto it = c.modes().find(k);
    if (it != c.modes().end()) s += factorial_weight(a) * it->second.squaredNorm();
  }
  return std::sqrt(s);
}

double two_n_norm(const HomoPoly& p) {
  for (const auto& [a, c] : p.coeffs()) {
    for (const auto& [k, v] : c.modes()) {
      if (k != 0) throw std::invalid_argument("two_n_norm: coefficients depend on time");
    }
  }
  return two_n_norm_mode(p, 0);
}

double graded_norm(const HomoPoly& f, int j) {
  if (j < 0) throw std::invalid_argument("graded_norm: negative Sobolev index");
  double by_index = 0.0;
  std::map<int, double> by_mode;
  for (const auto& [a, c] : f.coeffs()) {
    const double w = factorial_weight(a);
    const double h = hj_norm(c, j);
    by_index += w * h * h;
    for (const auto& [k, v] : c.modes()) by_mode[k] += w * v.squaredNorm();
  }
  double by_fourier = 0.0;
  for (const auto& [k, s] : by_mode) by_fourier += sobolev_weight(k, j) * s;
  const double scale = std::max(by_index, by_fourier);
  if (std::abs(by_index - by_fourier) > 1e-10 * scale) {
    throw ToleranceFailure("graded_norm: the two evaluations disagree");
  }
  return std::sqrt(by_index);
}

std::map<int, double> graded_norms(const PolyMap& f, int j) {
  std::map<int, double> r;
  for (const auto& [n, h] : f.parts()) r[n] = graded_norm(h, j);
  return r;
}

double algebra_constant(int ell) {
  if (ell < 1) throw std::invalid_argument("algebra_constant: need ell >= 1");
  auto g = [ell](double x) { return std::pow(1.0 + x * x, -ell); };
  constexpr int kCut = 1000;
  double s = 0.0;
  for (int k = kCut; k >= 1; --k) s += g(k);
  // Tail sum_{k > kCut} g(k) by Euler-Maclaurin. The integral of g over
  // [kCut, inf) becomes the integral of cos^(2 ell - 2) over
  // [atan(kCut), pi/2] after x = tan(theta); Simpson is exact to rounding on
  // that short, smooth interval.
  const double a = std::atan(static_cast<double>(kCut));
  const double b = kPi / 2.0;
  constexpr int kPanels = 64;
  const double h = (b - a) / kPanels;
  double integral = 0.0;
  for (int i = 0; i <= kPanels; ++i) {
    const double w = (i == 0 || i == kPanels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    integral += w * std::pow(std::cos(a + i * h), 2 * ell - 2);
  }
  integral *= h / 3.0;
  const double x = kCut;
  const double dg = -2.0 * ell * x * std::pow(1.0 + x * x, -ell - 1);
  const double tail = integral - g(x) / 2.0 - dg / 12.0;
  return std::pow(2.0, ell) * std::sqrt(1.0 + 2.0 * (s + tail));
}

double certified_sup_bound(const PolyMap& r, double delta, int ell) {
  if (!(delta > 0.0)) throw std::invalid_argument("certified_sup_bound: delta must be positive");
  double s = 0.0;
  for (const auto& [n, norm] : graded_norms(r, ell)) s += norm * std::pow(delta, n);
  return s;
}

}  // namespace pnf
