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

#include "pnf/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pnf/error.hpp"
#include "pnf/norms.hpp"

namespace pnf {

const char* path_name(Path p) { return p == Path::Uncouple ? "uncouple" : "normalize"; }

namespace {

int numerical_rank(const CMatrix& a, double tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  const auto& s = svd.singularValues();
  const double cut = tol * std::max(1.0, s(0));
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > cut ? 1 : 0;
  return r;
}

CVector eigenvalues(const RMatrix& a) {
  if (a.rows() == 0) return CVector();
  Eigen::ComplexEigenSolver<CMatrix> es(a.cast<Complex>(), false);
  return es.eigenvalues();
}

// Columns scaled to unit length; returns false when the result is not
// unitary to 1e-10.
bool unitary_columns(CMatrix& p) {
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    const double n = p.col(j).norm();
    if (n == 0.0) return false;
    p.col(j) /= n;
  }
  const CMatrix g = p.adjoint() * p - CMatrix::Identity(p.cols(), p.cols());
  return g.cwiseAbs().maxCoeff() <= 1e-10;
}

std::string tuple_string(const DivisorTuple& t) {
  std::ostringstream os;
  os << "(a=" << t.a.to_string() << ", k=" << t.k << ", j=" << t.j << ", |d|=" << std::abs(t.value)
     << ")";
  return os.str();
}

}  // namespace

int jordan_max_block(const RMatrix& a, double tol) {
  const int n = static_cast<int>(a.rows());
  if (n == 0) return 1;
  const CVector ev = eigenvalues(a);
  const double scale = 1.0 + a.norm();
  // Defective eigenvalues split by ~sqrt(eps); cluster generously.
  const double cluster = 1e-5 * scale;
  std::vector<Complex> centers;
  std::vector<int> counts;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    bool placed = false;
    for (std::size_t c = 0; c < centers.size(); ++c) {
      if (std::abs(ev[i] - centers[c]) <= cluster) {
        centers[c] = (centers[c] * static_cast<double>(counts[c]) + ev[i]) / (counts[c] + 1.0);
        ++counts[c];
        placed = true;
        break;
      }
    }
    if (!placed) {
      centers.push_back(ev[i]);
      counts.push_back(1);
    }
  }
  int nu = 1;
  const CMatrix ac = a.cast<Complex>();
  for (std::size_t c = 0; c < centers.size(); ++c) {
    const CMatrix b = ac - centers[c] * CMatrix::Identity(n, n);
    CMatrix power = b;
    int prev = numerical_rank(power, tol);
    for (int s = 1; s <= counts[c]; ++s) {
      power = power * b;
      const int r = numerical_rank(power, tol);
      if (r == prev) {
        nu = std::max(nu, s);
        break;
      }
      prev = r;
      if (s == counts[c]) nu = std::max(nu, s + 1);
    }
  }
  return std::min(nu, n);
}

EigenData eigen_data(const SystemSpec& sys, Path path) {
  EigenData e;
  e.path = path;
  if (path == Path::Uncouple) {
    if (sys.m0 < 1 || sys.m1 < 1) {
      throw HypothesisViolation("uncouple: both E0 and E1 must be nonempty");
    }
    e.lambda0 = sys.L0.eigvals;
    e.P0 = sys.L0.eigvecs;
    Eigen::FullPivLU<CMatrix> lu(e.P0);
    if (!lu.isInvertible()) throw HypothesisViolation("L0: not diagonalizable");
    e.P0inv = lu.inverse();
    e.lambda1 = sys.L1.eigvals.size() == sys.m1 ? sys.L1.eigvals : eigenvalues(sys.L1.matrix);
    e.nu = sys.L1.nu > 0 ? sys.L1.nu : jordan_max_block(sys.L1.matrix);
  } else {
    const int m = sys.m();
    const RMatrix l = sys.L();
    bool have = sys.L0.eigvecs.size() > 0 || sys.m0 == 0;
    have = have && (sys.m1 == 0 || sys.L1.eigvecs.size() > 0);
    bool done = false;
    if (have) {
      CMatrix p = CMatrix::Zero(m, m);
      CVector lam(m);
      if (sys.m0 > 0) {
        p.topLeftCorner(sys.m0, sys.m0) = sys.L0.eigvecs;
        lam.head(sys.m0) = sys.L0.eigvals;
      }
      if (sys.m1 > 0) {
        p.bottomRightCorner(sys.m1, sys.m1) = sys.L1.eigvecs;
        lam.tail(sys.m1) = sys.L1.eigvals;
      }
      if (unitary_columns(p)) {
        e.P = p;
        e.lambda = lam;
        done = true;
      }
    }
    if (!done) {
      Eigen::ComplexSchur<CMatrix> schur(l.cast<Complex>());
      const CMatrix& t = schur.matrixT();
      const double off = (t - CMatrix(t.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
      if (off > 1e-10 * (1.0 + l.norm())) {
        throw HypothesisViolation(
            "normalize: L is not normal; a unitary eigenbasis is required on this path");
      }
      e.P = schur.matrixU();
      e.lambda = t.diagonal();
    }
    e.Pinv = e.P.adjoint();
    e.nu = 1;
    e.lambda0 = e.lambda.head(sys.m0);
    e.lambda1 = e.lambda.tail(sys.m1);
  }
  double lam = 0.0;
  for (Eigen::Index i = 0; i < e.lambda0.size(); ++i) lam = std::max(lam, std::abs(e.lambda0[i]));
  for (Eigen::Index i = 0; i < e.lambda1.size(); ++i) lam = std::max(lam, std::abs(e.lambda1[i]));
  e.Lambda = lam;
  return e;
}

double default_tol_res(const EigenData& eig) { return 1e-9 * (1.0 + eig.Lambda); }

Complex divisor(const MultiIndex& a, int k, const CVector& source, Complex target, double period) {
  if (static_cast<Eigen::Index>(a.size()) != source.size()) {
    throw std::invalid_argument("divisor: index length does not match the spectrum");
  }
  Complex s(0.0, k * 2.0 * kPi / period);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0) s += static_cast<double>(a[i]) * source[static_cast<Eigen::Index>(i)];
  }
  return s - target;
}

Complex divisor(const MultiIndex& a, int k, int j, const EigenData& eig, double period) {
  if (eig.path == Path::Uncouple) return divisor(a, k, eig.lambda0, eig.lambda1[j], period);
  return divisor(a, k, eig.lambda, eig.lambda[j], period);
}

NonresonanceReport check_nonresonance(const SystemSpec& sys, const EigenData& eig, double tau,
                                      int degree_max, int fourier_max, Path path,
                                      double tol_res, bool allow_resonance) {
  if (!(tau > 0.0)) throw std::invalid_argument("check_nonresonance: tau must be positive");
  if (fourier_max < 0) throw std::invalid_argument("check_nonresonance: negative mode bound");
  NonresonanceReport rep;
  rep.path = path;
  rep.tau = tau;
  rep.tol_res = tol_res;
  rep.degree_max = degree_max;
  rep.fourier_max = fourier_max;
  rep.gamma_eff = std::numeric_limits<double>::infinity();
  const CVector& source = path == Path::Uncouple ? eig.lambda0 : eig.lambda;
  const CVector& targets = path == Path::Uncouple ? eig.lambda1 : eig.lambda;
  const int len = static_cast<int>(source.size());
  if (len == 0 || targets.size() == 0) return rep;
  for (int n = 2; n <= degree_max; ++n) {
    for (const MultiIndex& a : enumerate_indices(len, n)) {
      for (int k = -fourier_max; k <= fourier_max; ++k) {
        for (Eigen::Index j = 0; j < targets.size(); ++j) {
          DivisorTuple t{a, k, static_cast<int>(j), divisor(a, k, source, targets[j], sys.T), 0.0};
          const double mag = std::abs(t.value);
          t.weighted = mag * std::pow(static_cast<double>(n + std::abs(k)), tau);
          ++rep.scanned;
          if (mag <= tol_res) {
            rep.resonant.push_back(t);
            continue;
          }
          if (mag <= 10.0 * tol_res) rep.borderline.push_back(t);
          if (t.weighted < rep.gamma_eff) {
            rep.gamma_eff = t.weighted;
            rep.worst = t;
            rep.has_worst = true;
          }
        }
      }
    }
  }
  if (path == Path::Uncouple && !rep.resonant.empty() && !allow_resonance) {
    throw HypothesisViolation("non-resonance fails: resonant divisor " +
                              tuple_string(rep.resonant.front()) + " and " +
                              std::to_string(rep.resonant.size() - 1) + " more");
  }
  return rep;
}

int snapped_ceil(double x) {
  if (!std::isfinite(x) || x > 1e9) throw std::overflow_error("snapped_ceil: value too large");
  const double r = std::round(x);
  const double v = std::abs(x - r) <= 1e-12 * std::max(1.0, std::abs(x)) ? r : std::ceil(x);
  return std::max(1, static_cast<int>(v));
}

double stirling_sup(int pmax) {
  double best = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int p = 1; p <= pmax; ++p) {
    const double v = std::exp(2.0 + std::lgamma(p + 1.0) - (p + 0.5) * std::log(p) + p);
    if (v > prev * (1.0 + 1e-14)) {
      throw ToleranceFailure("stirling_sup: sequence is not decreasing");
    }
    prev = v;
    best = std::max(best, v);
  }
  const double limit = std::exp(2.0) * std::sqrt(2.0 * kPi);
  if (std::abs(prev - limit) > 1e-3 * limit) {
    throw ToleranceFailure("stirling_sup: tail does not approach the Stirling limit");
  }
  return best;
}

namespace {

double bracket(double T, double Lambda) {
  return 1.0 + (T * T / (2.0 * kPi * kPi)) * (4.0 * Lambda * Lambda + 1.0);
}

}  // namespace

ConstantsReport uncouple_constants(const SystemSpec& sys, const EigenData& eig, double gamma_eff,
                                double tau, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("constants: delta must be positive");
  if (!(gamma_eff > 0.0)) throw std::invalid_argument("constants: gamma_eff must be positive");
  ConstantsReport r;
  r.path = Path::Uncouple;
  r.delta = delta;
  r.Lambda = eig.Lambda;
  r.nu = eig.nu;
  r.gamma_eff = gamma_eff;
  r.tau = tau;
  r.ell = sys.ell;
  r.exponent_condition = tau * r.nu <= sys.ell;
  r.b = 1.0 / (r.ell + tau * r.nu + 1.0);
  const double lead = std::max(1.0, r.nu / std::pow(gamma_eff, r.nu));
  const double br = bracket(sys.T, r.Lambda);
  for (int j = 0; j <= r.ell + 1; ++j) r.C.push_back(lead * std::pow(br, j / 2.0));
  r.algebra_C = algebra_constant(r.ell);
  const double cc = r.algebra_C;
  const double sm0 = std::sqrt(static_cast<double>(sys.m0));
  const double sm = std::sqrt(static_cast<double>(sys.m()));
  const double c = sys.c;
  const double rho = sys.rho;
  r.K = std::max(9.0 * cc * sm0 * sm / rho,
                 8.0 * r.C_ell() * c * std::pow(cc * sm0, 3) * sm / (rho * rho));
  r.p_opt = r.p_opt_at(delta);
  r.M = c * (73.0 / 72.0 + cc * sm0 * (2.0 * sm + sm0 / 72.0));
  r.omega = std::log(2.0) / (2.0 * std::pow(2.0 * r.K, r.b));
  r.delta0 = std::min(1.0 / (2.0 * r.K * std::pow(2.0 * std::exp(1.0), r.b)),
                      rho / (4.0 * cc * sm * sm0));
  r.delta_in_range = delta < r.delta0;
  const double q = cc * sm / rho;
  const double x = 3.0 * r.delta0 * sm0 * q;
  r.M1 = 2.0 * c * sm0 * q * q * (2.0 - x) / ((1.0 - x) * (1.0 - x));
  r.M0 = (2.0 + std::pow(2.0, r.ell + tau * r.nu) * sys.m0) * r.M1;
  return r;
}

ConstantsReport normalform_constants(const SystemSpec& sys, const EigenData& eig, double gamma_eff,
                                double tau, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("constants: delta must be positive");
  if (!(gamma_eff > 0.0)) throw std::invalid_argument("constants: gamma_eff must be positive");
  ConstantsReport r;
  r.path = Path::Normalize;
  r.delta = delta;
  r.Lambda = eig.Lambda;
  r.nu = 1;
  r.gamma_eff = gamma_eff;
  r.tau = tau;
  r.ell = sys.ell;
  r.exponent_condition = tau <= sys.ell;
  r.b = 1.0 / (1.0 + r.ell + tau);
  const double lead = std::max(1.0, 1.0 / gamma_eff);
  const double br = bracket(sys.T, r.Lambda);
  for (int j = 0; j <= r.ell + 1; ++j) r.C.push_back(lead * std::pow(br, j / 2.0));
  r.algebra_C = algebra_constant(r.ell);
  const double cc = r.algebra_C;
  const double m = sys.m();
  const double sm = std::sqrt(m);
  r.bold_C = std::pow(cc * sm, 3) / (sys.rho * sys.rho) *
             ((2.5 * cc * cc * m + 2.0) * r.C_ell() * cc + 3.0 * sys.rho / (cc * sm));
  r.p_opt = r.p_opt_at(delta);
  r.omega = 1.0 / (std::exp(1.0) * std::pow(r.bold_C, r.b));
  r.stirling_sup = stirling_sup(200);
  r.stirling_limit = std::exp(2.0) * std::sqrt(2.0 * kPi);
  const double s = 1.0 + r.ell + tau;
  r.M_prime = (10.0 / 9.0) * sys.c * r.bold_C * r.bold_C *
              (std::pow(r.stirling_sup * std::sqrt(27.0 / (8.0 * std::exp(1.0))), s) +
               std::pow(2.0 * std::exp(1.0), 2.0 * s));
  r.delta_in_range = true;
  return r;
}

int ConstantsReport::p_opt_at(double d) const {
  if (!(d > 0.0)) throw std::invalid_argument("p_opt: delta must be positive");
  if (path == Path::Uncouple) return snapped_ceil(std::pow(2.0 * d * K, -b));
  return snapped_ceil(1.0 / (std::exp(1.0) * std::pow(bold_C * d, b)));
}

double ConstantsReport::remainder_bound(double d) const {
  if (path == Path::Uncouple) return M * std::exp(-omega / std::pow(d, b));
  return M_prime * d * d * std::exp(-omega / std::pow(d, b));
}

double ConstantsReport::gevrey_bound(int n, int m0) const {
  const double s = ell + 1.0 + tau * nu;
  return std::exp(0.5 * std::log(static_cast<double>(m0)) + (n - 1) * std::log(K) +
                  s * std::lgamma(n + 1.0));
}

std::map<std::string, double> ConstantsReport::values() const {
  std::map<std::string, double> v{
      {"Lambda", Lambda},       {"nu", static_cast<double>(nu)},
      {"gamma_eff", gamma_eff}, {"tau", tau},
      {"ell", static_cast<double>(ell)}, {"b", b},
      {"algebra_C", algebra_C}, {"p_opt", static_cast<double>(p_opt)},
      {"omega", omega},         {"delta", delta},
  };
  for (std::size_t j = 0; j < C.size(); ++j) v["C_" + std::to_string(j)] = C[j];
  if (path == Path::Uncouple) {
    v["K"] = K;
    v["delta0"] = delta0;
    v["M"] = M;
    v["M1"] = M1;
    v["M0"] = M0;
  } else {
    v["bold_C"] = bold_C;
    v["M_prime"] = M_prime;
    v["stirling_sup"] = stirling_sup;
    v["stirling_limit"] = stirling_limit;
  }
  return v;
}

std::map<std::string, std::string> ConstantsReport::notes() const {
  std::map<std::string, std::string> n{
      {"Lambda", "max |eigenvalue| over the linear part"},
      {"gamma_eff", "min |d| (|a|+|k|)^tau over the scanned non-resonant divisors"},
      {"tau", "user supplied"},
      {"algebra_C", "2^ell sqrt(sum_k (1+k^2)^-ell)"},
  };
  if (path == Path::Uncouple) {
    n["nu"] = "largest Jordan block of L1";
    n["b"] = "1/(ell + tau nu + 1)";
    n["C_j"] = "max(1, nu/gamma^nu) (1 + (T^2/2pi^2)(4 Lambda^2 + 1))^(j/2)";
    n["K"] = "max(9 C sqrt(m0 m)/rho, 8 C_ell c (C sqrt(m0))^3 sqrt(m)/rho^2)";
    n["p_opt"] = "ceil((2 delta K)^-b)";
    n["M"] = "c (73/72 + C sqrt(m0) (2 sqrt(m) + sqrt(m0)/72))";
    n["omega"] = "ln(2) / (2 (2K)^b)";
    n["delta0"] = "min(1/(2K (2e)^b), rho/(4 C sqrt(m) sqrt(m0)))";
    n["M1"] = "2c sqrt(m0) (C sqrt(m)/rho)^2 sum_k (k+2) x^k, x = 3 delta0 sqrt(m0) C sqrt(m)/rho";
    n["M0"] = "(1 + |P0| + 2^(ell + tau nu) m0 |P0|) M1 with |P0| = 1";
  } else {
    n["b"] = "1/(1 + ell + tau)";
    n["C_j"] = "max(1, 1/gamma) (1 + (T^2/2pi^2)(1 + 4 Lambda^2))^(j/2)";
    n["bold_C"] = "(C sqrt(m))^3/rho^2 [(5/2 C^2 m + 2) C_ell C + 3 rho/(C sqrt(m))]";
    n["p_opt"] = "ceil(1/(e (bold_C delta)^b))";
    n["omega"] = "1/(e bold_C^b)";
    n["stirling_sup"] = "sup over p = 1..200 of e^2 p!/(p^(p+1/2) e^-p)";
    n["M_prime"] = "(10/9) c bold_C^2 ((sup sqrt(27/(8e)))^(1+ell+tau) + (2e)^(2(1+ell+tau)))";
  }
  return n;
}

}  // namespace pnf
