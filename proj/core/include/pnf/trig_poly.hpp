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

#include <complex>
#include <map>
#include <set>

#include <Eigen/Dense>

namespace pnf {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;

// Relative tolerance for the conjugate-symmetry check on real-flagged values.
inline constexpr double kRealnessTolerance = 1e-10;

// Finite Fourier series t -> sum_k f^(k) exp(i k (2 pi / T) t) with values in
// C^dim. Modes with an all-zero coefficient are never stored.
//
// A value may carry a realness flag. Flagged values satisfy
// f^(-k) = conj(f^(k)) exactly: the flag is validated when set, and every
// operation producing a flagged result re-imposes the symmetry so rounding
// cannot accumulate into it.
class TrigPoly {
 public:
  TrigPoly() = default;
  TrigPoly(double period, int dim);

  static TrigPoly constant(double period, const CVector& value);
  static TrigPoly scalar(double period, const std::map<int, Complex>& modes);

  double period() const { return period_; }
  // 2 pi / T
  double frequency() const;
  int dim() const { return dim_; }
  bool real() const { return real_; }

  const std::map<int, CVector>& modes() const { return modes_; }
  CVector mode(int k) const;
  std::set<int> support() const;
  int max_abs_mode() const;
  bool is_zero() const { return modes_.empty(); }
  // Largest coefficient magnitude over all modes and components.
  double max_abs() const;

  void add_to_mode(int k, const CVector& c);
  void set_mode(int k, const CVector& c);

  // Validates conjugate symmetry (throws ToleranceFailure) and sets the flag.
  // The asymmetry is measured against max(scale, max_abs()), so callers
  // holding a tiny coefficient of a larger object can pass the object's
  // scale. Rounding-level asymmetry is removed.
  TrigPoly& mark_real(double scale = 0.0);
  void clear_real() { real_ = false; }
  // max_k |f^(-k) - conj(f^(k))|, absolute.
  double conjugate_asymmetry() const;
  // Drops every mode whose largest entry is <= threshold.
  TrigPoly& prune(double threshold);

  TrigPoly derivative() const;
  TrigPoly component(int i) const;
  // Mode-wise M * f^(k). Keeps the realness flag when `m_is_real`.
  TrigPoly transformed(const CMatrix& m, bool m_is_real) const;
  // Embeds the values into C^total at the given component offset.
  TrigPoly embedded(int total, int offset) const;
  CVector evaluate(double t) const;

  TrigPoly& operator+=(const TrigPoly& other);
  TrigPoly& operator-=(const TrigPoly& other);
  TrigPoly& operator*=(Complex s);
  TrigPoly& operator*=(double s);

  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
  friend TrigPoly operator*(TrigPoly a, Complex s) { return a *= s; }
  friend TrigPoly operator*(Complex s, TrigPoly a) { return a *= s; }
  friend TrigPoly operator*(TrigPoly a, double s) { return a *= s; }
  friend TrigPoly operator*(double s, TrigPoly a) { return a *= s; }

 private:
  void check_compatible(const TrigPoly& other) const;
  void symmetrize();
  friend TrigPoly trig_mul(const TrigPoly& f, const TrigPoly& g);

  double period_ = 2.0 * kPi;
  int dim_ = 1;
  bool real_ = false;
  std::map<int, CVector> modes_;
};

// Fourier-mode convolution. A dim-1 factor multiplies the other factor as a
// scalar; otherwise both factors must have equal dims and the product is
// taken componentwise.
TrigPoly trig_mul(const TrigPoly& f, const TrigPoly& g);

bool same_period(double a, double b);

}  // namespace pnf
