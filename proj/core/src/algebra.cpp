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

#include "pnf/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pnf {

const char* codomain_name(Codomain c) {
  switch (c) {
    case Codomain::E0:
      return "E0";
    case Codomain::E1:
      return "E1";
    case Codomain::Full:
      return "full";
  }
  return "?";
}

// ---------------------------------------------------------------- HomoPoly

HomoPoly::HomoPoly(int degree, int nvars, int dim, double period, Codomain tag)
    : degree_(degree), nvars_(nvars), dim_(dim), period_(period), tag_(tag) {
  if (degree < 0) throw std::invalid_argument("HomoPoly: negative degree");
  if (nvars < 1 || dim < 1) throw std::invalid_argument("HomoPoly: empty shape");
  if (!(period > 0.0)) throw std::invalid_argument("HomoPoly: period must be positive");
}

TrigPoly HomoPoly::coeff(const MultiIndex& alpha) const {
  auto it = coeffs_.find(alpha);
  if (it == coeffs_.end()) return TrigPoly(period_, dim_);
  return it->second;
}

void HomoPoly::add_term(const MultiIndex& alpha, const TrigPoly& c) {
  if (static_cast<int>(alpha.size()) != nvars_ || alpha.degree() != degree_) {
    throw std::invalid_argument("HomoPoly: monomial " + alpha.to_string() +
                                " does not fit degree " + std::to_string(degree_));
  }
  if (c.dim() != dim_) throw std::invalid_argument("HomoPoly: coefficient dim mismatch");
  if (!same_period(c.period(), period_)) throw std::invalid_argument("HomoPoly: period mismatch");
  if (c.is_zero()) return;
  auto it = coeffs_.find(alpha);
  if (it == coeffs_.end()) {
    coeffs_.emplace(alpha, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) coeffs_.erase(it);
}

void HomoPoly::set_term(const MultiIndex& alpha, const TrigPoly& c) {
  coeffs_.erase(alpha);
  add_term(alpha, c);
}

bool HomoPoly::real() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const auto& kv) { return kv.second.real(); });
}

HomoPoly& HomoPoly::mark_real(double scale) {
  const double ref = std::max(scale, max_abs());
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    it->second.mark_real(ref);
    if (it->second.is_zero()) {
      it = coeffs_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

HomoPoly& HomoPoly::prune(double threshold) {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    it->second.prune(threshold);
    if (it->second.is_zero()) {
      it = coeffs_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

int HomoPoly::max_abs_mode() const {
  int r = 0;
  for (const auto& [a, c] : coeffs_) r = std::max(r, c.max_abs_mode());
  return r;
}

double HomoPoly::max_abs() const {
  double r = 0.0;
  for (const auto& [a, c] : coeffs_) r = std::max(r, c.max_abs());
  return r;
}

void HomoPoly::check_compatible(const HomoPoly& o) const {
  if (o.degree_ != degree_ || o.nvars_ != nvars_ || o.dim_ != dim_) {
    throw std::invalid_argument("HomoPoly: shape mismatch");
  }
  if (!same_period(o.period_, period_)) throw std::invalid_argument("HomoPoly: period mismatch");
}

HomoPoly& HomoPoly::operator+=(const HomoPoly& o) {
  check_compatible(o);
  for (const auto& [a, c] : o.coeffs_) add_term(a, c);
  return *this;
}

HomoPoly& HomoPoly::operator-=(const HomoPoly& o) {
  check_compatible(o);
  for (const auto& [a, c] : o.coeffs_) add_term(a, -1.0 * c);
  return *this;
}

HomoPoly& HomoPoly::operator*=(Complex s) {
  if (s == Complex(0.0, 0.0)) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [a, c] : coeffs_) c *= s;
  return *this;
}

HomoPoly HomoPoly::time_derivative() const {
  HomoPoly r(degree_, nvars_, dim_, period_, tag_);
  for (const auto& [a, c] : coeffs_) r.add_term(a, c.derivative());
  return r;
}

HomoPoly HomoPoly::transformed(const CMatrix& m, bool m_is_real) const {
  HomoPoly r(degree_, nvars_, static_cast<int>(m.rows()), period_, tag_);
  for (const auto& [a, c] : coeffs_) r.add_term(a, c.transformed(m, m_is_real));
  return r;
}

HomoPoly HomoPoly::component(int i) const {
  HomoPoly r(degree_, nvars_, 1, period_, tag_);
  for (const auto& [a, c] : coeffs_) r.add_term(a, c.component(i));
  return r;
}

HomoPoly HomoPoly::embedded_codomain(int total, int offset, Codomain tag) const {
  HomoPoly r(degree_, nvars_, total, period_, tag);
  for (const auto& [a, c] : coeffs_) r.add_term(a, c.embedded(total, offset));
  return r;
}

HomoPoly HomoPoly::lifted(int total, int offset) const {
  HomoPoly r(degree_, total, dim_, period_, tag_);
  for (const auto& [a, c] : coeffs_) r.add_term(a.embedded(total, offset), c);
  return r;
}

HomoPoly HomoPoly::filter_modes(const std::function<bool(int)>& keep) const {
  HomoPoly r(degree_, nvars_, dim_, period_, tag_);
  for (const auto& [a, c] : coeffs_) {
    TrigPoly f(period_, dim_);
    for (const auto& [k, v] : c.modes()) {
      if (keep(k)) f.set_mode(k, v);
    }
    r.add_term(a, f);
  }
  return r;
}

namespace {

Complex monomial_value(const MultiIndex& a, const CVector& x) {
  Complex v(1.0, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (int e = 0; e < a[i]; ++e) v *= x[static_cast<Eigen::Index>(i)];
  }
  return v;
}

}  // namespace

CVector HomoPoly::evaluate(const CVector& x, double t) const {
  if (x.size() != nvars_) throw std::invalid_argument("HomoPoly: evaluation point dim");
  CVector v = CVector::Zero(dim_);
  for (const auto& [a, c] : coeffs_) v += monomial_value(a, x) * c.evaluate(t);
  return v;
}

TrigPoly HomoPoly::evaluate_trig(const CVector& x) const {
  if (x.size() != nvars_) throw std::invalid_argument("HomoPoly: evaluation point dim");
  TrigPoly r(period_, dim_);
  for (const auto& [a, c] : coeffs_) {
    const Complex xa = monomial_value(a, x);
    for (const auto& [k, v] : c.modes()) r.add_to_mode(k, xa * v);
  }
  return r;
}

// ----------------------------------------------------------------- PolyMap

PolyMap::PolyMap(int nvars, int dim, double period, Codomain tag)
    : nvars_(nvars), dim_(dim), period_(period), tag_(tag) {
  if (nvars < 1 || dim < 1) throw std::invalid_argument("PolyMap: empty shape");
  if (!(period > 0.0)) throw std::invalid_argument("PolyMap: period must be positive");
}

PolyMap PolyMap::identity(int nvars, double period) {
  return linear(CMatrix::Identity(nvars, nvars), period, true);
}

PolyMap PolyMap::linear(const CMatrix& a, double period, bool a_is_real) {
  PolyMap r(static_cast<int>(a.cols()), static_cast<int>(a.rows()), period);
  HomoPoly h(1, r.nvars_, r.dim_, period);
  for (int j = 0; j < r.nvars_; ++j) {
    TrigPoly c = TrigPoly::constant(period, a.col(j));
    if (a_is_real) c.mark_real();
    h.add_term(MultiIndex::unit(r.nvars_, j), c);
  }
  r.add_part(h);
  return r;
}

void PolyMap::set_codomain(Codomain c) {
  tag_ = c;
  for (auto& [n, h] : parts_) h.set_codomain(c);
}

HomoPoly PolyMap::part(int n) const {
  auto it = parts_.find(n);
  if (it == parts_.end()) return HomoPoly(n, nvars_, dim_, period_, tag_);
  return it->second;
}

int PolyMap::lo() const { return parts_.empty() ? 0 : parts_.begin()->first; }
int PolyMap::hi() const { return parts_.empty() ? -1 : parts_.rbegin()->first; }

std::size_t PolyMap::term_count() const {
  std::size_t n = 0;
  for (const auto& [d, h] : parts_) n += h.term_count();
  return n;
}

void PolyMap::add_part(const HomoPoly& h) {
  if (h.nvars() != nvars_ || h.dim() != dim_) {
    throw std::invalid_argument("PolyMap: part shape mismatch");
  }
  if (!same_period(h.period(), period_)) throw std::invalid_argument("PolyMap: period mismatch");
  if (h.is_zero()) return;
  auto it = parts_.find(h.degree());
  if (it == parts_.end()) {
    HomoPoly copy = h;
    copy.set_codomain(tag_);
    parts_.emplace(h.degree(), std::move(copy));
    return;
  }
  it->second += h;
  if (it->second.is_zero()) parts_.erase(it);
}

void PolyMap::set_part(const HomoPoly& h) {
  parts_.erase(h.degree());
  add_part(h);
}

void PolyMap::add_term(const MultiIndex& alpha, const TrigPoly& c) {
  HomoPoly h(alpha.degree(), nvars_, dim_, period_, tag_);
  h.add_term(alpha, c);
  add_part(h);
}

bool PolyMap::real() const {
  return std::all_of(parts_.begin(), parts_.end(),
                     [](const auto& kv) { return kv.second.real(); });
}

PolyMap& PolyMap::prune(double threshold) {
  for (auto it = parts_.begin(); it != parts_.end();) {
    it->second.prune(threshold);
    if (it->second.is_zero()) {
      it = parts_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

PolyMap& PolyMap::mark_real(double scale) {
  const double ref = std::max(scale, max_abs());
  for (auto it = parts_.begin(); it != parts_.end();) {
    it->second.mark_real(ref);
    if (it->second.is_zero()) {
      it = parts_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

int PolyMap::max_abs_mode() const {
  int r = 0;
  for (const auto& [n, h] : parts_) r = std::max(r, h.max_abs_mode());
  return r;
}

double PolyMap::max_abs() const {
  double r = 0.0;
  for (const auto& [n, h] : parts_) r = std::max(r, h.max_abs());
  return r;
}

void PolyMap::check_compatible(const PolyMap& o) const {
  if (o.nvars_ != nvars_ || o.dim_ != dim_) throw std::invalid_argument("PolyMap: shape mismatch");
  if (!same_period(o.period_, period_)) throw std::invalid_argument("PolyMap: period mismatch");
}

PolyMap& PolyMap::operator+=(const PolyMap& o) {
  check_compatible(o);
  for (const auto& [n, h] : o.parts_) add_part(h);
  return *this;
}

PolyMap& PolyMap::operator-=(const PolyMap& o) {
  check_compatible(o);
  for (const auto& [n, h] : o.parts_) add_part(h * Complex(-1.0, 0.0));
  return *this;
}

PolyMap& PolyMap::operator*=(Complex s) {
  if (s == Complex(0.0, 0.0)) {
    parts_.clear();
    return *this;
  }
  for (auto& [n, h] : parts_) h *= s;
  return *this;
}

PolyMap PolyMap::time_derivative() const {
  PolyMap r(nvars_, dim_, period_, tag_);
  for (const auto& [n, h] : parts_) r.add_part(h.time_derivative());
  return r;
}

PolyMap PolyMap::transformed(const CMatrix& m, bool m_is_real) const {
  PolyMap r(nvars_, static_cast<int>(m.rows()), period_, tag_);
  for (const auto& [n, h] : parts_) r.add_part(h.transformed(m, m_is_real));
  return r;
}

PolyMap PolyMap::component(int i) const {
  PolyMap r(nvars_, 1, period_, tag_);
  for (const auto& [n, h] : parts_) r.add_part(h.component(i));
  return r;
}

PolyMap PolyMap::components(int offset, int count, Codomain tag) const {
  if (offset < 0 || count < 1 || offset + count > dim_) {
    throw std::invalid_argument("PolyMap: component range");
  }
  CMatrix sel = CMatrix::Zero(count, dim_);
  for (int i = 0; i < count; ++i) sel(i, offset + i) = 1.0;
  PolyMap r = transformed(sel, true);
  r.set_codomain(tag);
  return r;
}

PolyMap PolyMap::embedded_codomain(int total, int offset, Codomain tag) const {
  PolyMap r(nvars_, total, period_, tag);
  for (const auto& [n, h] : parts_) r.add_part(h.embedded_codomain(total, offset, tag));
  return r;
}

PolyMap PolyMap::lifted(int total, int offset) const {
  PolyMap r(total, dim_, period_, tag_);
  for (const auto& [n, h] : parts_) r.add_part(h.lifted(total, offset));
  return r;
}

PolyMap PolyMap::filter_modes(const std::function<bool(int)>& keep) const {
  PolyMap r(nvars_, dim_, period_, tag_);
  for (const auto& [n, h] : parts_) r.add_part(h.filter_modes(keep));
  return r;
}

PolyMap PolyMap::filter_terms(const std::function<bool(const MultiIndex&)>& keep) const {
  PolyMap r(nvars_, dim_, period_, tag_);
  for (const auto& [n, h] : parts_) {
    for (const auto& [a, c] : h.coeffs()) {
      if (keep(a)) r.add_term(a, c);
    }
  }
  return r;
}

CVector PolyMap::evaluate(const CVector& x, double t) const {
  CVector v = CVector::Zero(dim_);
  for (const auto& [n, h] : parts_) v += h.evaluate(x, t);
  return v;
}

TrigPoly PolyMap::evaluate_trig(const CVector& x) const {
  TrigPoly r(period_, dim_);
  for (const auto& [n, h] : parts_) {
    const TrigPoly part = h.evaluate_trig(x);
    for (const auto& [k, v] : part.modes()) r.add_to_mode(k, v);
  }
  return r;
}

// --------------------------------------------------------------- functions

PolyMap project(const PolyMap& f, int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("project: lo > hi");
  PolyMap r(f.nvars(), f.dim(), f.period(), f.codomain());
  for (const auto& [n, h] : f.parts()) {
    if (n >= lo && n <= hi) r.add_part(h);
  }
  return r;
}

PolyMap multiply(const PolyMap& scalar, const PolyMap& g, int max_deg) {
  if (scalar.dim() != 1) throw std::invalid_argument("multiply: first factor must be scalar");
  if (scalar.nvars() != g.nvars()) throw std::invalid_argument("multiply: variable count mismatch");
  PolyMap r(g.nvars(), g.dim(), g.period(), g.codomain());
  for (const auto& [na, ha] : scalar.parts()) {
    for (const auto& [ng, hg] : g.parts()) {
      if (na + ng > max_deg) break;
      HomoPoly h(na + ng, g.nvars(), g.dim(), g.period(), g.codomain());
      for (const auto& [a, ca] : ha.coeffs()) {
        for (const auto& [b, cb] : hg.coeffs()) h.add_term(a + b, trig_mul(ca, cb));
      }
      r.add_part(h);
    }
  }
  return r;
}

PolyMap compose(const PolyMap& v, const PolyMap& inner, int max_deg) {
  if (inner.dim() != v.nvars()) {
    throw std::invalid_argument("compose: inner map has dim " + std::to_string(inner.dim()) +
                                ", outer map expects " + std::to_string(v.nvars()));
  }
  if (!inner.is_zero() && inner.lo() < 1) {
    throw std::invalid_argument("compose: inner map has a degree-0 part");
  }
  PolyMap r(inner.nvars(), v.dim(), v.period(), v.codomain());
  if (inner.is_zero() || v.is_zero()) return r;
  const int lo = inner.lo();

  std::vector<PolyMap> comps;
  comps.reserve(inner.dim());
  for (int i = 0; i < inner.dim(); ++i) comps.push_back(inner.component(i));

  // X^alpha(inner), built from X^(alpha - sigma_j) by one extra factor.
  std::map<MultiIndex, PolyMap> powers;
  PolyMap one(inner.nvars(), 1, inner.period());
  {
    TrigPoly c = TrigPoly::constant(inner.period(), CVector::Ones(1));
    c.mark_real();
    one.add_term(MultiIndex::zero(inner.nvars()), c);
  }
  powers.emplace(MultiIndex::zero(v.nvars()), one);
  std::function<const PolyMap&(const MultiIndex&)> power =
      [&](const MultiIndex& a) -> const PolyMap& {
    auto it = powers.find(a);
    if (it != powers.end()) return it->second;
    std::size_t j = a.size();
    while (a[j - 1] == 0) --j;
    const PolyMap& prev = power(a.lowered(j - 1));
    PolyMap p = multiply(comps[j - 1], prev, max_deg);
    return powers.emplace(a, std::move(p)).first->second;
  };

  for (const auto& [q, h] : v.parts()) {
    if (static_cast<long long>(q) * lo > max_deg) break;
    for (const auto& [a, c] : h.coeffs()) {
      const PolyMap& pa = power(a);
      for (const auto& [n, hp] : pa.parts()) {
        HomoPoly out(n, inner.nvars(), v.dim(), v.period(), v.codomain());
        for (const auto& [b, cb] : hp.coeffs()) out.add_term(b, trig_mul(cb, c));
        r.add_part(out);
      }
    }
  }
  return r;
}

HomoPoly directional_derivative(const HomoPoly& phi, const HomoPoly& g) {
  if (phi.degree() == 0) throw std::invalid_argument("directional_derivative: degree-0 map");
  if (g.dim() != phi.nvars() || g.nvars() != phi.nvars()) {
    throw std::invalid_argument("directional_derivative: direction shape mismatch");
  }
  HomoPoly r(phi.degree() - 1 + g.degree(), phi.nvars(), phi.dim(), phi.period(),
             phi.codomain());
  const int m = phi.nvars();
  // g_beta split into scalar components once.
  std::vector<std::pair<MultiIndex, std::vector<TrigPoly>>> gs;
  for (const auto& [b, cb] : g.coeffs()) {
    std::vector<TrigPoly> comps;
    comps.reserve(m);
    for (int j = 0; j < m; ++j) comps.push_back(cb.component(j));
    gs.emplace_back(b, std::move(comps));
  }
  for (const auto& [a, ca] : phi.coeffs()) {
    for (int j = 0; j < m; ++j) {
      if (a[j] == 0) continue;
      const MultiIndex base = a.lowered(j);
      const TrigPoly scaled = ca * static_cast<double>(a[j]);
      for (const auto& [b, comps] : gs) {
        if (comps[j].is_zero()) continue;
        r.add_term(base + b, trig_mul(comps[j], scaled));
      }
    }
  }
  return r;
}

PolyMap directional_derivative(const PolyMap& phi, const PolyMap& g, int max_deg) {
  PolyMap r(phi.nvars(), phi.dim(), phi.period(), phi.codomain());
  for (const auto& [k, hk] : phi.parts()) {
    if (k == 0) continue;
    for (const auto& [q, hq] : g.parts()) {
      if (k - 1 + q > max_deg) break;
      r.add_part(directional_derivative(hk, hq));
    }
  }
  return r;
}

double max_difference(const PolyMap& a, const PolyMap& b) {
  if (a.nvars() != b.nvars() || a.dim() != b.dim()) {
    throw std::invalid_argument("max_difference: shape mismatch");
  }
  double worst = 0.0;
  std::set<std::pair<int, MultiIndex>> keys;
  for (const PolyMap* f : {&a, &b}) {
    for (const auto& [n, h] : f->parts()) {
      for (const auto& [al, c] : h.coeffs()) keys.emplace(n, al);
    }
  }
  for (const auto& [n, al] : keys) {
    const TrigPoly ca = a.part(n).coeff(al);
    const TrigPoly cb = b.part(n).coeff(al);
    std::set<int> ks = ca.support();
    for (int k : cb.support()) ks.insert(k);
    for (int k : ks) {
      const double d = (ca.mode(k) - cb.mode(k)).cwiseAbs().maxCoeff();
      worst = std::max(worst, d);
    }
  }
  return worst;
}

double relative_difference(const PolyMap& a, const PolyMap& b) {
  const double scale = std::max({a.max_abs(), b.max_abs(), 1e-300});
  return max_difference(a, b) / scale;
}

}  // namespace pnf
