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

#include <functional>
#include <limits>
#include <map>

#include "pnf/multi_index.hpp"
#include "pnf/trig_poly.hpp"

namespace pnf {

// Which subspace a polynomial map takes values in. Informational only; the
// arithmetic checks dimensions, not tags.
enum class Codomain { E0, E1, Full };

const char* codomain_name(Codomain c);

// Homogeneous polynomial of degree n in `nvars` variables with TrigPoly
// coefficients valued in C^dim.
class HomoPoly {
 public:
  HomoPoly() = default;
  HomoPoly(int degree, int nvars, int dim, double period,
           Codomain tag = Codomain::Full);

  int degree() const { return degree_; }
  int nvars() const { return nvars_; }
  int dim() const { return dim_; }
  double period() const { return period_; }
  Codomain codomain() const { return tag_; }
  void set_codomain(Codomain c) { tag_ = c; }

  const std::map<MultiIndex, TrigPoly>& coeffs() const { return coeffs_; }
  TrigPoly coeff(const MultiIndex& alpha) const;
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t term_count() const { return coeffs_.size(); }

  void add_term(const MultiIndex& alpha, const TrigPoly& c);
  void set_term(const MultiIndex& alpha, const TrigPoly& c);

  // True when every coefficient carries the realness flag.
  bool real() const;
  // Validates every coefficient against max(scale, max_abs()).
  HomoPoly& mark_real(double scale = 0.0);
  HomoPoly& prune(double threshold);
  int max_abs_mode() const;
  double max_abs() const;

  HomoPoly& operator+=(const HomoPoly& o);
  HomoPoly& operator-=(const HomoPoly& o);
  HomoPoly& operator*=(Complex s);
  friend HomoPoly operator+(HomoPoly a, const HomoPoly& b) { return a += b; }
  friend HomoPoly operator-(HomoPoly a, const HomoPoly& b) { return a -= b; }
  friend HomoPoly operator*(HomoPoly a, Complex s) { return a *= s; }

  HomoPoly time_derivative() const;
  HomoPoly transformed(const CMatrix& m, bool m_is_real) const;
  HomoPoly component(int i) const;
  HomoPoly embedded_codomain(int total, int offset, Codomain tag) const;
  // Re-expresses the polynomial in `total` variables, the old ones sitting at
  // [offset, offset + nvars()).
  HomoPoly lifted(int total, int offset) const;
  // Keeps only Fourier modes for which keep(k) holds.
  HomoPoly filter_modes(const std::function<bool(int)>& keep) const;

  CVector evaluate(const CVector& x, double t) const;
  // Sum_alpha c_alpha(.) x^alpha as a function of t.
  TrigPoly evaluate_trig(const CVector& x) const;

 private:
  void check_compatible(const HomoPoly& o) const;

  int degree_ = 0;
  int nvars_ = 1;
  int dim_ = 1;
  double period_ = 2.0 * kPi;
  Codomain tag_ = Codomain::Full;
  std::map<MultiIndex, TrigPoly> coeffs_;
};

inline constexpr int kNoDegreeCap = std::numeric_limits<int>::max();

// Graded sum of homogeneous parts. Zero parts are not stored.
class PolyMap {
 public:
  PolyMap() = default;
  PolyMap(int nvars, int dim, double period, Codomain tag = Codomain::Full);

  static PolyMap identity(int nvars, double period);
  // X -> A X, with A of shape dim x nvars.
  static PolyMap linear(const CMatrix& a, double period, bool a_is_real);

  int nvars() const { return nvars_; }
  int dim() const { return dim_; }
  double period() const { return period_; }
  Codomain codomain() const { return tag_; }
  void set_codomain(Codomain c);

  const std::map<int, HomoPoly>& parts() const { return parts_; }
  HomoPoly part(int n) const;
  bool is_zero() const { return parts_.empty(); }
  // Lowest and highest stored degree; (0, -1) when zero.
  int lo() const;
  int hi() const;
  std::size_t term_count() const;

  void add_part(const HomoPoly& h);
  void set_part(const HomoPoly& h);
  void add_term(const MultiIndex& alpha, const TrigPoly& c);

  bool real() const;
  PolyMap& mark_real(double scale = 0.0);
  PolyMap& prune(double threshold);
  int max_abs_mode() const;
  double max_abs() const;

  PolyMap& operator+=(const PolyMap& o);
  PolyMap& operator-=(const PolyMap& o);
  PolyMap& operator*=(Complex s);
  friend PolyMap operator+(PolyMap a, const PolyMap& b) { return a += b; }
  friend PolyMap operator-(PolyMap a, const PolyMap& b) { return a -= b; }
  friend PolyMap operator*(PolyMap a, Complex s) { return a *= s; }

  PolyMap time_derivative() const;
  PolyMap transformed(const CMatrix& m, bool m_is_real) const;
  PolyMap component(int i) const;
  PolyMap components(int offset, int count, Codomain tag) const;
  PolyMap embedded_codomain(int total, int offset, Codomain tag) const;
  PolyMap lifted(int total, int offset) const;
  PolyMap filter_modes(const std::function<bool(int)>& keep) const;
  // Keeps the monomials for which keep(alpha) holds.
  PolyMap filter_terms(const std::function<bool(const MultiIndex&)>& keep) const;

  CVector evaluate(const CVector& x, double t) const;
  TrigPoly evaluate_trig(const CVector& x) const;

 private:
  void check_compatible(const PolyMap& o) const;

  int nvars_ = 1;
  int dim_ = 1;
  double period_ = 2.0 * kPi;
  Codomain tag_ = Codomain::Full;
  std::map<int, HomoPoly> parts_;
};

// Parts with degree in [lo, hi]. Throws std::invalid_argument when lo > hi.
PolyMap project(const PolyMap& f, int lo, int hi);

// Product of a scalar-valued map with another map, truncated at max_deg.
PolyMap multiply(const PolyMap& scalar, const PolyMap& g, int max_deg);

// V(inner(X, t), t) through degree max_deg. inner must have no degree-0 part
// and dim() equal to V.nvars().
PolyMap compose(const PolyMap& v, const PolyMap& inner, int max_deg);

// D_X phi . g, homogeneous of degree deg(phi) - 1 + deg(g).
HomoPoly directional_derivative(const HomoPoly& phi, const HomoPoly& g);
PolyMap directional_derivative(const PolyMap& phi, const PolyMap& g, int max_deg);

// Largest coefficient-wise difference relative to the larger operand scale.
double relative_difference(const PolyMap& a, const PolyMap& b);
// Largest absolute coefficient-wise difference.
double max_difference(const PolyMap& a, const PolyMap& b);

}  // namespace pnf
