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

#include "pnf/trig_poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pnf/error.hpp"

namespace pnf {

namespace {

bool all_zero(const CVector& c) {
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (c[i] != Complex(0.0, 0.0)) return false;
  }
  return true;
}

}  // namespace

bool same_period(double a, double b) {
  return std::abs(a - b) <= 1e-14 * std::max(std::abs(a), std::abs(b));
}

TrigPoly::TrigPoly(double period, int dim) : period_(period), dim_(dim) {
  if (!(period > 0.0)) throw std::invalid_argument("TrigPoly: period must be positive");
  if (dim < 1) throw std::invalid_argument("TrigPoly: dim must be >= 1");
}

TrigPoly TrigPoly::constant(double period, const CVector& value) {
  TrigPoly f(period, static_cast<int>(value.size()));
  f.set_mode(0, value);
  return f;
}

TrigPoly TrigPoly::scalar(double period, const std::map<int, Complex>& modes) {
  TrigPoly f(period, 1);
  for (const auto& [k, c] : modes) {
    CVector v(1);
    v[0] = c;
    f.set_mode(k, v);
  }
  return f;
}

double TrigPoly::frequency() const { return 2.0 * kPi / period_; }

CVector TrigPoly::mode(int k) const {
  auto it = modes_.find(k);
  if (it == modes_.end()) return CVector::Zero(dim_);
  return it->second;
}

std::set<int> TrigPoly::support() const {
  std::set<int> s;
  for (const auto& [k, c] : modes_) s.insert(k);
  return s;
}

int TrigPoly::max_abs_mode() const {
  int r = 0;
  for (const auto& [k, c] : modes_) r = std::max(r, std::abs(k));
  return r;
}

double TrigPoly::max_abs() const {
  double r = 0.0;
  for (const auto& [k, c] : modes_) {
    for (Eigen::Index i = 0; i < c.size(); ++i) r = std::max(r, std::abs(c[i]));
  }
  return r;
}

void TrigPoly::add_to_mode(int k, const CVector& c) {
  if (c.size() != dim_) throw std::invalid_argument("TrigPoly: coefficient dim mismatch");
  auto it = modes_.find(k);
  if (it == modes_.end()) {
    if (!all_zero(c)) modes_.emplace(k, c);
    return;
  }
  it->second += c;
  if (all_zero(it->second)) modes_.erase(it);
}

void TrigPoly::set_mode(int k, const CVector& c) {
  if (c.size() != dim_) throw std::invalid_argument("TrigPoly: coefficient dim mismatch");
  if (all_zero(c)) {
    modes_.erase(k);
  } else {
    modes_[k] = c;
  }
}

double TrigPoly::conjugate_asymmetry() const {
  double worst = 0.0;
  for (const auto& [k, c] : modes_) {
    const CVector partner = mode(-k);
    worst = std::max(worst, (partner - c.conjugate()).cwiseAbs().maxCoeff());
  }
  return worst;
}

TrigPoly& TrigPoly::prune(double threshold) {
  for (auto it = modes_.begin(); it != modes_.end();) {
    if (it->second.cwiseAbs().maxCoeff() <= threshold) {
      it = modes_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

TrigPoly& TrigPoly::mark_real(double scale) {
  const double asym = conjugate_asymmetry();
  const double ref = std::max(scale, max_abs());
  if (asym > kRealnessTolerance * ref) {
    throw ToleranceFailure("TrigPoly: value flagged real is not conjugate-symmetric (asymmetry " +
                           std::to_string(asym) + " at scale " + std::to_string(ref) + ")");
  }
  symmetrize();
  real_ = true;
  return *this;
}

void TrigPoly::symmetrize() {
  std::map<int, CVector> sym;
  for (const auto& [k, c] : modes_) {
    if (k < 0) {
      if (modes_.contains(-k)) continue;
      const CVector half = 0.5 * c;
      if (!all_zero(half)) {
        sym.emplace(k, half);
        sym.emplace(-k, half.conjugate());
      }
      continue;
    }
    if (k == 0) {
      CVector r = c.real().cast<Complex>();
      if (!all_zero(r)) sym.emplace(0, r);
      continue;
    }
    const CVector avg = 0.5 * (c + mode(-k).conjugate());
    if (!all_zero(avg)) {
      sym.emplace(k, avg);
      sym.emplace(-k, avg.conjugate());
    }
  }
  modes_ = std::move(sym);
}

TrigPoly TrigPoly::derivative() const {
  TrigPoly r(period_, dim_);
  const double w = frequency();
  for (const auto& [k, c] : modes_) {
    if (k != 0) r.set_mode(k, Complex(0.0, k * w) * c);
  }
  r.real_ = real_;
  if (r.real_) r.symmetrize();
  return r;
}

TrigPoly TrigPoly::component(int i) const {
  if (i < 0 || i >= dim_) throw std::out_of_range("TrigPoly: component index");
  TrigPoly r(period_, 1);
  for (const auto& [k, c] : modes_) {
    CVector v(1);
    v[0] = c[i];
    r.set_mode(k, v);
  }
  r.real_ = real_;
  return r;
}

TrigPoly TrigPoly::transformed(const CMatrix& m, bool m_is_real) const {
  if (m.cols() != dim_) throw std::invalid_argument("TrigPoly: matrix shape mismatch");
  TrigPoly r(period_, static_cast<int>(m.rows()));
  for (const auto& [k, c] : modes_) r.set_mode(k, m * c);
  r.real_ = real_ && m_is_real;
  if (r.real_) r.symmetrize();
  return r;
}

TrigPoly TrigPoly::embedded(int total, int offset) const {
  if (offset < 0 || offset + dim_ > total) {
    throw std::invalid_argument("TrigPoly: embedding out of range");
  }
  TrigPoly r(period_, total);
  for (const auto& [k, c] : modes_) {
    CVector v = CVector::Zero(total);
    v.segment(offset, dim_) = c;
    r.set_mode(k, v);
  }
  r.real_ = real_;
  return r;
}

CVector TrigPoly::evaluate(double t) const {
  CVector v = CVector::Zero(dim_);
  const double w = frequency();
  for (const auto& [k, c] : modes_) {
    v += std::exp(Complex(0.0, k * w * t)) * c;
  }
  return v;
}

void TrigPoly::check_compatible(const TrigPoly& other) const {
  if (!same_period(period_, other.period_)) {
    throw std::invalid_argument("TrigPoly: period mismatch");
  }
  if (dim_ != other.dim_) throw std::invalid_argument("TrigPoly: dim mismatch");
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& other) {
  check_compatible(other);
  for (const auto& [k, c] : other.modes_) add_to_mode(k, c);
  real_ = real_ && other.real_;
  if (real_) symmetrize();
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& other) {
  check_compatible(other);
  for (const auto& [k, c] : other.modes_) add_to_mode(k, -c);
  real_ = real_ && other.real_;
  if (real_) symmetrize();
  return *this;
}

TrigPoly& TrigPoly::operator*=(Complex s) {
  if (s == Complex(0.0, 0.0)) {
    modes_.clear();
  } else {
    for (auto& [k, c] : modes_) c *= s;
  }
  real_ = real_ && s.imag() == 0.0;
  return *this;
}

TrigPoly& TrigPoly::operator*=(double s) { return *this *= Complex(s, 0.0); }

TrigPoly trig_mul(const TrigPoly& f, const TrigPoly& g) {
  if (!same_period(f.period(), g.period())) {
    throw std::invalid_argument("trig_mul: period mismatch");
  }
  int dim;
  if (f.dim() == 1) {
    dim = g.dim();
  } else if (g.dim() == 1 || g.dim() == f.dim()) {
    dim = f.dim();
  } else {
    throw std::invalid_argument("trig_mul: incompatible dims " + std::to_string(f.dim()) +
                                " and " + std::to_string(g.dim()));
  }
  const bool real = f.real() && g.real();
  std::map<int, CVector> acc;
  for (const auto& [k1, a] : f.modes()) {
    for (const auto& [k2, b] : g.modes()) {
      if (real && k1 + k2 < 0) continue;
      CVector prod;
      if (a.size() == 1) {
        prod = a[0] * b;
      } else if (b.size() == 1) {
        prod = b[0] * a;
      } else {
        prod = a.cwiseProduct(b);
      }
      auto [it, inserted] = acc.try_emplace(k1 + k2, prod);
      if (!inserted) it->second += prod;
    }
  }
  TrigPoly r(f.period(), dim);
  for (const auto& [k, c] : acc) {
    r.set_mode(k, c);
    if (real && k > 0) r.set_mode(-k, c.conjugate());
  }
  if (real) {
    r.real_ = true;
    r.symmetrize();
  }
  return r;
}

}  // namespace pnf
