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

#include "pnf/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "pnf/error.hpp"
#include "pnf/norms.hpp"
#include "pnf/parallel.hpp"

namespace pnf {

namespace {

CMatrix jacobian(const PolyMap& f, const CVector& x, double t) {
  CMatrix j = CMatrix::Zero(f.dim(), f.nvars());
  for (const auto& [n, h] : f.parts()) {
    for (const auto& [a, c] : h.coeffs()) {
      const CVector val = c.evaluate(t);
      for (int v = 0; v < f.nvars(); ++v) {
        if (a[v] == 0) continue;
        Complex mono(static_cast<double>(a[v]), 0.0);
        for (int w = 0; w < f.nvars(); ++w) {
          const int e = w == v ? a[w] - 1 : a[w];
          for (int q = 0; q < e; ++q) mono *= x[w];
        }
        j.col(v) += mono * val;
      }
    }
  }
  return j;
}

CVector eval_or_zero(const PolyMap& f, const CVector& x, double t) {
  if (f.is_zero()) return CVector::Zero(f.dim());
  return f.evaluate(x, t);
}

// Degree-n, mode-k content of g as dense coefficients [alpha][k + kmax][c],
// recovered from point values.
std::vector<std::vector<CVector>> extract(const std::function<CVector(const CVector&, double)>& g,
                                          int nvars, int dim, int n, int dg, int kmax,
                                          double period, const std::vector<MultiIndex>& idx) {
  const int ns = dg + 1;
  const int nt = 2 * kmax + 1;
  const int nm = static_cast<int>(idx.size());
  const int nx = 2 * nm + 4;
  const double w = 2.0 * kPi / period;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RMatrix design(nx, nm);
  std::vector<RVector> pts(nx, RVector(nvars));
  for (int s = 0; s < nx; ++s) {
    for (int v = 0; v < nvars; ++v) pts[s][v] = u(rng);
    for (int a = 0; a < nm; ++a) {
      double mono = 1.0;
      for (int v = 0; v < nvars; ++v) mono *= std::pow(pts[s][v], idx[a][v]);
      design(s, a) = mono;
    }
  }
  // samples[s](k, c)
  std::vector<CMatrix> samples(nx, CMatrix::Zero(nt, dim));
  parallel_for(nx, [&](std::size_t s) {
    for (int i = 0; i < nt; ++i) {
      const double t = period * i / nt;
      CVector radial = CVector::Zero(dim);
      for (int j = 0; j < ns; ++j) {
        const Complex z = std::polar(1.0, 2.0 * kPi * j / ns);
        radial += std::pow(z, -n) * g(z * pts[s].cast<Complex>(), t);
      }
      radial /= static_cast<double>(ns);
      for (int k = -kmax; k <= kmax; ++k) {
        samples[s].row(k + kmax) +=
            (std::exp(Complex(0.0, -k * w * t)) / static_cast<double>(nt)) * radial.transpose();
      }
    }
  });
  const Eigen::ColPivHouseholderQR<RMatrix> qr(design);
  std::vector<std::vector<CVector>> out(nm, std::vector<CVector>(nt, CVector::Zero(dim)));
  for (int k = 0; k < nt; ++k) {
    for (int c = 0; c < dim; ++c) {
      RVector re(nx);
      RVector im(nx);
      for (int s = 0; s < nx; ++s) {
        re[s] = samples[s](k, c).real();
        im[s] = samples[s](k, c).imag();
      }
      const RVector cr = qr.solve(re);
      const RVector ci = qr.solve(im);
      for (int a = 0; a < nm; ++a) out[a][k][c] = Complex(cr[a], ci[a]);
    }
  }
  return out;
}

}  // namespace

OracleResult oracle_solve(const SystemSpec& sys, int p, Path path, double tol_res) {
  sys.validate();
  if (p < 2) throw std::invalid_argument("oracle_solve: p must be >= 2");
  const bool uncouple_path = path == Path::Uncouple;
  const int nvars = uncouple_path ? sys.m0 : sys.m();
  const int dim = uncouple_path ? sys.m1 : sys.m();
  const RMatrix src = uncouple_path ? sys.L0.matrix : sys.L();
  const RMatrix tgt = uncouple_path ? sys.L1.matrix : sys.L();
  const double w = 2.0 * kPi / sys.T;
  const bool real = sys.V.real();
  double tol = tol_res;
  CVector lambda;
  if (!uncouple_path) {
    const EigenData eig = eigen_data(sys, Path::Normalize);
    lambda = eig.lambda;
    if (!(tol > 0.0)) tol = default_tol_res(eig);
  }
  OracleResult res;
  res.phi = PolyMap(nvars, dim, sys.T, uncouple_path ? Codomain::E1 : Codomain::Full);
  res.N = PolyMap(nvars, dim, sys.T);
  const int deg_v = std::max(2, sys.deg_V());
  for (int n = 2; n <= p; ++n) {
    const PolyMap phi = res.phi;
    const PolyMap nf = res.N;
    auto g = [&](const CVector& x, double t) -> CVector {
      const CVector ph = eval_or_zero(phi, x, t);
      CVector full(sys.m());
      if (uncouple_path) {
        full << x, ph;
      } else {
        full = x + ph;
      }
      const CVector v = eval_or_zero(sys.V, full, t);
      const CMatrix j = jacobian(phi, x, t);
      if (uncouple_path) return v.tail(sys.m1) - j * v.head(sys.m0);
      return v - j * eval_or_zero(nf, x, t);
    };
    const int dg = deg_v * std::max(1, n - 1) + n;
    const int kphi = phi.is_zero() ? 0 : phi.max_abs_mode();
    const int knf = nf.is_zero() ? 0 : nf.max_abs_mode();
    const int kmax = sys.max_mode() + deg_v * kphi + kphi + knf;
    const std::vector<MultiIndex> idx = enumerate_indices(nvars, n);
    const int nm = static_cast<int>(idx.size());
    const int nk = 2 * kmax + 1;
    const int count = nm * nk * dim;
    res.unknowns += count;
    if (res.unknowns > 5000) throw std::invalid_argument("oracle_solve: more than 5000 unknowns");
    const auto f = extract(g, nvars, dim, n, dg, kmax, sys.T, idx);
    std::map<MultiIndex, int> pos;
    for (int a = 0; a < nm; ++a) pos[idx[a]] = a;
    auto at = [&](int a, int k, int c) { return (a * nk + k) * dim + c; };
    std::vector<double> weight(nm);
    for (int a = 0; a < nm; ++a) weight[a] = std::sqrt(idx[a].factorial());
    // Operator phi -> D phi . src X - tgt phi + d/dt phi in the basis
    // x^alpha e_c exp(i k w t) / sqrt(alpha!).
    CMatrix op = CMatrix::Zero(count, count);
    CVector rhs(count);
    for (int a = 0; a < nm; ++a) {
      for (int k = 0; k < nk; ++k) {
        for (int c = 0; c < dim; ++c) {
          const int col = at(a, k, c);
          rhs[at(a, k, c)] = weight[a] * f[a][k][c];
          op(col, col) += Complex(0.0, (k - kmax) * w);
          for (int r = 0; r < dim; ++r) op(at(a, k, r), col) -= tgt(r, c);
          for (int j = 0; j < nvars; ++j) {
            if (idx[a][j] == 0) continue;
            for (int l = 0; l < nvars; ++l) {
              if (src(j, l) == 0.0) continue;
              const int b = pos.at(idx[a].lowered(j).raised(l));
              op(at(b, k, c), col) += idx[a][j] * src(j, l) * weight[b] / weight[a];
            }
          }
        }
      }
    }
    CVector z;
    CVector nres = CVector::Zero(count);
    if (uncouple_path) {
      const Eigen::FullPivLU<CMatrix> lu(op);
      if (lu.rank() < count) {
        throw HypothesisViolation("oracle_solve: rank deficiency outside expected resonant kernel");
      }
      z = lu.solve(rhs);
    } else {
      const Eigen::JacobiSVD<CMatrix> svd(op, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const RVector sv = svd.singularValues();
      CVector proj = svd.matrixU().adjoint() * rhs;
      int rank = 0;
      for (int i = 0; i < count; ++i) {
        if (sv[i] > tol) {
          proj[i] /= sv[i];
          ++rank;
        } else {
          proj[i] = 0.0;
        }
      }
      z = svd.matrixV() * proj;
      nres = rhs - op * z;
      std::size_t expected = 0;
      for (const MultiIndex& a : idx) {
        for (int k = -kmax; k <= kmax; ++k) {
          for (int j = 0; j < dim; ++j) {
            if (std::abs(divisor(a, k, lambda, lambda[j], sys.T)) <= tol) ++expected;
          }
        }
      }
      res.kernel_dim += count - rank;
      res.expected_kernel += expected;
      if (static_cast<std::size_t>(count - rank) != expected) {
        std::ostringstream os;
        os << "oracle_solve: kernel dimension " << count - rank << " at degree " << n
           << " differs from the " << expected << " resonant monomials";
        throw HypothesisViolation(os.str());
      }
    }
    HomoPoly hp(n, nvars, dim, sys.T, uncouple_path ? Codomain::E1 : Codomain::Full);
    HomoPoly hn(n, nvars, dim, sys.T);
    // Roundoff-only degrees are judged against the size of the field.
    double scale = std::max(rhs.cwiseAbs().maxCoeff(), sys.V.is_zero() ? 0.0 : sys.V.max_abs());
    for (int a = 0; a < nm; ++a) {
      TrigPoly cp(sys.T, dim);
      TrigPoly cn(sys.T, dim);
      for (int k = 0; k < nk; ++k) {
        CVector vp(dim);
        CVector vn(dim);
        for (int c = 0; c < dim; ++c) {
          vp[c] = z[at(a, k, c)] / weight[a];
          vn[c] = nres[at(a, k, c)] / weight[a];
          scale = std::max({scale, std::abs(vp[c]), std::abs(vn[c])});
        }
        cp.set_mode(k - kmax, vp);
        cn.set_mode(k - kmax, vn);
      }
      hp.add_term(idx[a], cp);
      hn.add_term(idx[a], cn);
    }
    hp.prune(1e-13 * scale);
    hn.prune(1e-13 * scale);
    if (real) {
      hp.mark_real(scale);
      hn.mark_real(scale);
    }
    res.phi.add_part(hp);
    res.N.add_part(hn);
  }
  return res;
}

Trajectory integrate(const Field& f, const RVector& u0, double t0, double t1, double h,
                     const StopRule& stop) {
  if (!(h > 0.0)) throw std::invalid_argument("integrate: h must be positive");
  const long steps = std::max(1L, static_cast<long>(std::ceil((t1 - t0) / h - 1e-9)));
  const double dt = (t1 - t0) / steps;
  Trajectory tr;
  tr.t.reserve(steps + 1);
  tr.u.reserve(steps + 1);
  RVector u = u0;
  tr.t.push_back(t0);
  tr.u.push_back(u);
  for (long i = 0; i < steps; ++i) {
    const double t = t0 + i * dt;
    const RVector k1 = f(u, t);
    const RVector k2 = f(u + 0.5 * dt * k1, t + 0.5 * dt);
    const RVector k3 = f(u + 0.5 * dt * k2, t + 0.5 * dt);
    const RVector k4 = f(u + dt * k3, t + dt);
    u += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double tn = t0 + (i + 1) * dt;
    if (!u.allFinite()) {
      tr.blew_up = true;
      tr.stop_time = tn;
      return tr;
    }
    tr.t.push_back(tn);
    tr.u.push_back(u);
    if (stop && stop(u, tn)) {
      tr.stopped = true;
      tr.stop_time = tn;
      return tr;
    }
  }
  return tr;
}

Field original_field(const SystemSpec& sys) {
  const RMatrix l = sys.L();
  const PolyMap v = sys.V;
  return [l, v](const RVector& u, double t) -> RVector {
    RVector r = l * u;
    if (!v.is_zero()) r += v.evaluate(u.cast<Complex>(), t).real();
    return r;
  };
}

Field transformed_field(const SystemSpec& sys, const Transformed& tr, bool zero_remainder) {
  const int m0 = sys.m0;
  const int m1 = sys.m1;
  const RMatrix l0 = sys.L0.matrix;
  const RMatrix l1 = sys.L1.matrix;
  return [=](const RVector& x, double t) -> RVector {
    const CVector xc = x.cast<Complex>();
    RVector r(m0 + m1);
    r.head(m0) = l0 * x.head(m0) + eval_or_zero(tr.V0t, xc, t).real();
    RVector v1 = l1 * x.tail(m1) + eval_or_zero(tr.V1t, xc, t).real();
    if (!zero_remainder) v1 += eval_or_zero(tr.R, xc.head(m0), t).real();
    r.tail(m1) = v1;
    return r;
  };
}

DriftReport manifold_drift(const SystemSpec& sys, const UncoupleResult& res, double delta,
                           double t_end, double h, std::uint64_t seed, bool zero_remainder) {
  const Transformed tr = transform(sys, res.phi, res.R, res.d_max);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RVector dir(sys.m0);
  for (int i = 0; i < sys.m0; ++i) dir[i] = g(rng);
  if (dir.norm() == 0.0) dir[0] = 1.0;
  dir *= 0.5 * delta * std::pow(u(rng), 1.0 / sys.m0) / dir.norm();
  DriftReport rep;
  rep.u0_init = dir;
  rep.t_end = t_end;
  RVector x = RVector::Zero(sys.m());
  x.head(sys.m0) = dir;
  const int m0 = sys.m0;
  const Trajectory traj = integrate(transformed_field(sys, tr, zero_remainder), x, 0.0, t_end, h,
                                    [m0, delta](const RVector& s, double) {
                                      return s.head(m0).norm() > delta;
                                    });
  for (const RVector& s : traj.u) {
    rep.max_u0 = std::max(rep.max_u0, s.head(m0).norm());
    rep.max_v1 = std::max(rep.max_v1, s.tail(sys.m1).norm());
  }
  rep.exited = traj.stopped || traj.blew_up;
  rep.exit_time = traj.stop_time;
  return rep;
}

double pushforward_gap(const SystemSpec& sys, const UncoupleResult& res, const RVector& u0,
                       double t_end, double h) {
  const Transformed tr = transform(sys, res.phi, res.R, res.d_max);
  RVector y = RVector::Zero(sys.m());
  y.head(sys.m0) = u0;
  RVector x = y;
  x.tail(sys.m1) = eval_or_zero(res.phi, u0.cast<Complex>(), 0.0).real();
  const Trajectory a = integrate(original_field(sys), x, 0.0, t_end, h);
  const Trajectory b = integrate(transformed_field(sys, tr, false), y, 0.0, t_end, h);
  const std::size_t n = std::min(a.u.size(), b.u.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    RVector back = b.u[i];
    back.tail(sys.m1) +=
        eval_or_zero(res.phi, b.u[i].head(sys.m0).cast<Complex>(), b.t[i]).real();
    worst = std::max(worst, (a.u[i] - back).norm());
  }
  if (a.blew_up || b.blew_up) return std::numeric_limits<double>::infinity();
  return worst;
}

double sampled_sup(const PolyMap& r, double delta, int ell, int samples, std::uint64_t seed) {
  if (r.is_zero()) return 0.0;
  const int n = r.nvars();
  std::vector<CVector> pts;
  for (int i = 0; i < n; ++i) {
    for (double s : {-1.0, 1.0}) {
      CVector x = CVector::Zero(n);
      x[i] = s * delta;
      pts.push_back(x);
    }
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int s = 0; s < samples; ++s) {
    RVector x(n);
    for (int i = 0; i < n; ++i) x[i] = g(rng);
    if (x.norm() == 0.0) x[0] = 1.0;
    pts.push_back((delta / x.norm() * x).cast<Complex>());
  }
  double worst = 0.0;
  for (const CVector& x : pts) worst = std::max(worst, hj_norm(r.evaluate_trig(x), ell));
  return worst;
}

SweepResult delta_sweep(const SystemSpec& sys, const std::vector<double>& deltas, Path path,
                        const SweepOptions& opt) {
  if (deltas.empty()) throw std::invalid_argument("delta_sweep: empty delta list");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0)) throw std::invalid_argument("delta_sweep: delta must be positive");
    if (i > 0 && !(deltas[i] < deltas[i - 1])) {
      throw std::invalid_argument("delta_sweep: delta list must be decreasing");
    }
  }
  SweepResult out;
  out.path = path;
  out.rows.resize(deltas.size());
  std::vector<double> bs(deltas.size());
  parallel_for(deltas.size(), [&](std::size_t i) {
    SweepRow& row = out.rows[i];
    row.delta = deltas[i];
    PolyMap r;
    ConstantsReport rep;
    if (path == Path::Uncouple) {
      UncoupleOptions o;
      o.delta = deltas[i];
      o.p = opt.p;
      o.tau = opt.tau;
      o.tol_res = opt.tol_res;
      o.p_cap = opt.p_cap;
      const UncoupleResult res = uncouple(sys, o);
      r = res.R;
      rep = res.report;
      row.p_opt = res.p;
      row.certified_bound = res.certified_bound;
      row.in_range = res.report.delta_in_range;
    } else {
      NormalFormOptions o;
      o.delta = deltas[i];
      o.p = opt.p;
      o.tau = opt.tau;
      o.tol_res = opt.tol_res;
      o.p_cap = opt.p_cap;
      o.seed = opt.seed;
      const NormalFormResult res = normalize(sys, o);
      r = res.R;
      rep = res.report;
      row.p_opt = res.p;
      row.certified_bound = res.certified_bound;
      row.in_range = res.report.delta_in_range;
    }
    row.sampled_sup = sampled_sup(r, deltas[i], sys.ell, opt.samples, opt.seed);
    row.analytic_bound = rep.remainder_bound(deltas[i]);
    row.omega = rep.omega;
    bs[i] = rep.b;
  });
  out.b = bs.back();
  out.omega = out.rows.back().omega;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const SweepRow& row : out.rows) {
    if (!(row.certified_bound > 0.0)) continue;
    xs.push_back(std::pow(row.delta, -out.b));
    ys.push_back(std::log(row.certified_bound));
  }
  out.fitted = xs.size();
  if (xs.size() >= 2) {
    RMatrix a(xs.size(), 2);
    RVector y(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      a(i, 0) = xs[i];
      a(i, 1) = 1.0;
      y[i] = ys[i];
    }
    const RVector c = a.colPivHouseholderQr().solve(y);
    out.slope = c[0];
    out.intercept = c[1];
  }
  return out;
}

}  // namespace pnf
