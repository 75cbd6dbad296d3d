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

#include "pnf/fixtures.hpp"

#include <cmath>
#include <stdexcept>

namespace pnf {

namespace {

void add(PolyMap& v, int comp, std::vector<int> alpha, const std::map<int, Complex>& modes) {
  TrigPoly c(v.period(), v.dim());
  for (const auto& [k, z] : modes) {
    CVector e = CVector::Zero(v.dim());
    e[comp] = z;
    c.add_to_mode(k, e);
  }
  v.add_term(MultiIndex(std::move(alpha)), c);
}

void constant(PolyMap& v, int comp, std::vector<int> alpha, double a) {
  add(v, comp, std::move(alpha), {{0, a}});
}

void cosine(PolyMap& v, int comp, std::vector<int> alpha, double a) {
  add(v, comp, std::move(alpha), {{-1, 0.5 * a}, {1, 0.5 * a}});
}

LinearBlock block(const RMatrix& a, const CVector& vals, const CMatrix& vecs) {
  LinearBlock b;
  b.matrix = a;
  b.eigvals = vals;
  b.eigvecs = vecs;
  return b;
}

LinearBlock scalar_block(double x) {
  LinearBlock b;
  b.matrix = RMatrix::Constant(1, 1, x);
  b.eigvals = CVector::Constant(1, x);
  b.eigvecs = CMatrix::Identity(1, 1);
  return b;
}

LinearBlock empty_block() {
  LinearBlock b;
  b.matrix = RMatrix(0, 0);
  return b;
}

// a J with J = [[0, 1], [-1, 0]]; unitary eigenbasis (1, +-i) / sqrt 2.
LinearBlock rotation_block(double a) {
  RMatrix m(2, 2);
  m << 0.0, a, -a, 0.0;
  CVector vals(2);
  vals << Complex(0.0, a), Complex(0.0, -a);
  CMatrix vecs(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  vecs << s, s, Complex(0.0, s), Complex(0.0, -s);
  return block(m, vals, vecs);
}

// Companion block of x'' + 2 xi w x' + w^2 x = 0 with eigenvectors (1, lambda).
void oscillator(RMatrix& a, CVector& vals, CMatrix& vecs, int at, double w, double xi) {
  a(at, at + 1) = 1.0;
  a(at + 1, at) = -w * w;
  a(at + 1, at + 1) = -2.0 * xi * w;
  const Complex lam(-xi * w, w * std::sqrt(1.0 - xi * xi));
  vals[at] = lam;
  vals[at + 1] = std::conj(lam);
  vecs(at, at) = 1.0;
  vecs(at + 1, at) = lam;
  vecs(at, at + 1) = 1.0;
  vecs(at + 1, at + 1) = std::conj(lam);
}

}  // namespace

SystemSpec basic_fixture() {
  SystemSpec s;
  s.name = "uncouple_basic";
  s.T = 2.0 * kPi;
  s.m0 = 1;
  s.m1 = 1;
  s.L0 = scalar_block(0.0);
  s.L1 = scalar_block(-1.0);
  s.L1.nu = 1;
  s.V = PolyMap(2, 2, s.T);
  cosine(s.V, 1, {2, 0}, 1.0);
  constant(s.V, 1, {1, 1}, 0.5);
  s.V.mark_real();
  s.c = 1.0;
  s.rho = 0.8;
  s.ell = 1;
  return s;
}

SystemSpec hopf_fixture() {
  SystemSpec s;
  s.name = "hopf";
  s.T = 2.0 * kPi;
  s.m0 = 2;
  s.m1 = 0;
  s.L0 = rotation_block(std::sqrt(2.0));
  s.L1 = empty_block();
  s.V = PolyMap(2, 2, s.T);
  constant(s.V, 0, {3, 0}, -1.0);
  constant(s.V, 0, {1, 2}, -1.0);
  constant(s.V, 1, {2, 1}, -1.0);
  constant(s.V, 1, {0, 3}, -1.0);
  constant(s.V, 0, {1, 1}, 0.5);
  constant(s.V, 1, {2, 0}, 0.25);
  cosine(s.V, 1, {2, 0}, 0.5);
  s.V.mark_real();
  s.c = 1.0;
  s.rho = 1.0;
  s.ell = 1;
  return s;
}

SystemSpec two_dof_forced_fixture() {
  SystemSpec s;
  s.name = "two_dof_forced";
  const double w1 = 1.0;
  const double w2 = 2.3;
  const double xi1 = 0.01;
  const double xi2 = 0.05;
  const double omega = 0.9;
  const double a12 = 0.5;  // X1 X2 in the first equation
  const double a11 = 1.0;  // X1^2 in the first equation
  const double b11 = 0.8;  // X1^2 in the second equation
  const double b12 = 0.3;  // X1 X2 in the second equation
  s.params = {{"omega1", w1}, {"omega2", w2}, {"xi1", xi1}, {"xi2", xi2}, {"Omega", omega},
              {"a11", a11},   {"a12", a12},   {"b11", b11}, {"b12", b12}};
  s.T = 2.0 * kPi / omega;
  s.m0 = 3;
  s.m1 = 2;
  RMatrix a0 = RMatrix::Zero(3, 3);
  CVector v0 = CVector::Zero(3);
  CMatrix p0 = CMatrix::Zero(3, 3);
  oscillator(a0, v0, p0, 0, w1, xi1);
  p0(2, 2) = 1.0;
  s.L0 = block(a0, v0, p0);
  RMatrix a1 = RMatrix::Zero(2, 2);
  CVector v1 = CVector::Zero(2);
  CMatrix p1 = CMatrix::Zero(2, 2);
  oscillator(a1, v1, p1, 0, w2, xi2);
  s.L1 = block(a1, v1, p1);
  s.L1.nu = 1;
  s.epsilon_index = 2;
  // Variables (X1, Y1, eps, X2, Y2).
  s.V = PolyMap(5, 5, s.T);
  constant(s.V, 1, {2, 0, 0, 0, 0}, -a11);
  constant(s.V, 1, {1, 0, 0, 1, 0}, -a12);
  cosine(s.V, 1, {0, 0, 2, 0, 0}, 1.0);
  constant(s.V, 4, {2, 0, 0, 0, 0}, -b11);
  constant(s.V, 4, {1, 0, 0, 1, 0}, -b12);
  s.V.mark_real();
  s.c = 1.0;
  s.rho = 1.0;
  s.ell = 1;
  return s;
}

SystemSpec resonant_fixture() {
  SystemSpec s;
  s.name = "resonant";
  s.T = 2.0 * kPi;
  s.m0 = 1;
  s.m1 = 1;
  s.L0 = scalar_block(-1.0);
  s.L1 = scalar_block(-2.0);
  s.L1.nu = 1;
  s.V = PolyMap(2, 2, s.T);
  constant(s.V, 1, {2, 0}, 1.0);
  s.V.mark_real();
  return s;
}

SystemSpec one_to_one_fixture() {
  SystemSpec s;
  s.name = "one_to_one";
  s.T = 2.0 * kPi;
  s.m0 = 2;
  s.m1 = 0;
  s.L0 = rotation_block(1.0);
  s.L1 = empty_block();
  s.V = PolyMap(2, 2, s.T);
  cosine(s.V, 1, {2, 0}, 1.0);
  add(s.V, 0, {1, 1}, {{-1, Complex(0.0, 0.25)}, {1, Complex(0.0, -0.25)}});
  constant(s.V, 0, {3, 0}, -1.0);
  constant(s.V, 1, {0, 3}, -1.0);
  s.V.mark_real();
  return s;
}

std::vector<std::string> fixture_names() {
  return {"hopf", "one_to_one", "resonant", "two_dof_forced", "uncouple_basic"};
}

SystemSpec fixture_by_name(const std::string& name) {
  if (name == "uncouple_basic") return basic_fixture();
  if (name == "hopf") return hopf_fixture();
  if (name == "two_dof_forced") return two_dof_forced_fixture();
  if (name == "resonant") return resonant_fixture();
  if (name == "one_to_one") return one_to_one_fixture();
  throw std::invalid_argument("unknown fixture " + name);
}

}  // namespace pnf
