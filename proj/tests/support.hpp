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

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "pnf/algebra.hpp"
#include "pnf/system.hpp"

namespace pnf::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

inline int uniform_int(Rng& rng, int a, int b) {
  return std::uniform_int_distribution<int>(a, b)(rng);
}

inline Complex random_complex(Rng& rng) { return {uniform(rng, -1, 1), uniform(rng, -1, 1)}; }

// Real-valued trig polynomial with `nmodes` random modes in [-kmax, kmax].
inline TrigPoly random_trig(Rng& rng, double period, int dim, int kmax, int nmodes = 3) {
  TrigPoly f(period, dim);
  for (int i = 0; i < nmodes; ++i) {
    const int k = uniform_int(rng, 0, kmax);
    CVector c(dim);
    for (int r = 0; r < dim; ++r) c[r] = random_complex(rng);
    if (k == 0) {
      f.add_to_mode(0, c.real().cast<Complex>());
    } else {
      f.add_to_mode(k, c);
      f.add_to_mode(-k, c.conjugate());
    }
  }
  f.mark_real();
  return f;
}

inline MultiIndex random_index(Rng& rng, int nvars, int degree) {
  std::vector<int> e(nvars, 0);
  for (int i = 0; i < degree; ++i) ++e[uniform_int(rng, 0, nvars - 1)];
  return MultiIndex(std::move(e));
}

inline HomoPoly random_homo(Rng& rng, int degree, int nvars, int dim, double period, int kmax,
                            int nterms, Codomain tag = Codomain::Full) {
  HomoPoly h(degree, nvars, dim, period, tag);
  for (int i = 0; i < nterms; ++i) {
    h.add_term(random_index(rng, nvars, degree), random_trig(rng, period, dim, kmax, 2));
  }
  h.mark_real();
  return h;
}

inline PolyMap random_map(Rng& rng, int lo, int hi, int nvars, int dim, double period, int kmax,
                          int nterms) {
  PolyMap f(nvars, dim, period);
  for (int n = lo; n <= hi; ++n) f.add_part(random_homo(rng, n, nvars, dim, period, kmax, nterms));
  return f;
}

inline RMatrix random_orthogonal(Rng& rng, int n) {
  RMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = uniform(rng, -1, 1);
  Eigen::HouseholderQR<RMatrix> qr(a);
  return qr.householderQ() * RMatrix::Identity(n, n);
}

// Normal real matrix Q B Q^T built from 1x1 and 2x2 rotation-scaling blocks,
// with its unitary eigenbasis.
inline LinearBlock random_normal_block(Rng& rng, int n) {
  RMatrix b = RMatrix::Zero(n, n);
  CVector vals(n);
  CMatrix vecs = CMatrix::Zero(n, n);
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n;) {
    const double re = uniform(rng, -1, 1);
    if (i + 1 < n && uniform(rng, 0, 1) < 0.5) {
      const double im = uniform(rng, 0.2, 2.0);
      b(i, i) = re;
      b(i + 1, i + 1) = re;
      b(i, i + 1) = im;
      b(i + 1, i) = -im;
      vals[i] = Complex(re, im);
      vals[i + 1] = Complex(re, -im);
      vecs(i, i) = s;
      vecs(i + 1, i) = Complex(0, s);
      vecs(i, i + 1) = s;
      vecs(i + 1, i + 1) = Complex(0, -s);
      i += 2;
    } else {
      b(i, i) = re;
      vals[i] = re;
      vecs(i, i) = 1.0;
      i += 1;
    }
  }
  const RMatrix q = random_orthogonal(rng, n);
  LinearBlock out;
  out.matrix = q * b * q.transpose();
  out.eigvals = vals;
  out.eigvecs = q.cast<Complex>() * vecs;
  out.nu = 1;
  return out;
}

// Upper-triangular Jordan-type block with a single eigenvalue and unit
// superdiagonal.
inline LinearBlock random_jordan_block(Rng& rng, int n) {
  const double a = uniform(rng, -1, 1);
  LinearBlock out;
  out.matrix = RMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) out.matrix(i, i) = a;
  for (int i = 0; i + 1 < n; ++i) out.matrix(i, i + 1) = 1.0;
  out.eigvals = CVector::Constant(n, a);
  out.nu = n;
  return out;
}

inline SystemSpec random_system(Rng& rng, int m0, int m1, bool jordan, double period) {
  SystemSpec s;
  s.name = "random";
  s.T = period;
  s.m0 = m0;
  s.m1 = m1;
  s.L0 = random_normal_block(rng, m0);
  s.L1 = jordan ? random_jordan_block(rng, m1) : random_normal_block(rng, m1);
  s.V = PolyMap(s.m(), s.m(), period);
  return s;
}

}  // namespace pnf::testing
