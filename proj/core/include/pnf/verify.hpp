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

#include <cstdint>
#include <functional>
#include <vector>

#include "pnf/normalform.hpp"
#include "pnf/uncouple.hpp"

namespace pnf {

// Dense functional-equation oracle. Works in the original coordinates with its
// own operator assembly and extracts right-hand sides by sampling, so it
// shares only polynomial evaluation with the engine.
struct OracleResult {
  PolyMap phi;
  PolyMap N;  // normalize path only
  std::size_t unknowns = 0;
  std::size_t kernel_dim = 0;
  std::size_t expected_kernel = 0;
};

OracleResult oracle_solve(const SystemSpec& sys, int p, Path path, double tol_res = 0.0);

using Field = std::function<RVector(const RVector&, double)>;
using StopRule = std::function<bool(const RVector&, double)>;

struct Trajectory {
  std::vector<double> t;
  std::vector<RVector> u;
  bool blew_up = false;
  bool stopped = false;
  double stop_time = 0.0;
};

// Classical RK4 with N = ceil((t1 - t0) / h) equal steps.
Trajectory integrate(const Field& f, const RVector& u0, double t0, double t1, double h,
                     const StopRule& stop = {});

// du/dt = L u + Re V(u, t).
Field original_field(const SystemSpec& sys);
Field transformed_field(const SystemSpec& sys, const Transformed& tr, bool zero_remainder);

struct DriftReport {
  RVector u0_init;
  double max_v1 = 0.0;
  double max_u0 = 0.0;
  bool exited = false;
  double exit_time = 0.0;
  double t_end = 0.0;
};

// Integrates the transformed system from (u0, 0) with |u0| <= delta / 2 drawn
// from the seed; stops when |u0(t)| leaves the disk of radius delta.
DriftReport manifold_drift(const SystemSpec& sys, const UncoupleResult& res, double delta,
                           double t_end, double h, std::uint64_t seed,
                           bool zero_remainder = false);

// Largest |u(t) - (u0(t), v1(t) + phi(u0(t), t))| over [0, t_end] between the
// original system started on the graph and the transformed one from (u0, 0).
double pushforward_gap(const SystemSpec& sys, const UncoupleResult& res, const RVector& u0,
                       double t_end, double h);

// max |r(x, .)|_{H^ell} over `samples` random points of the sphere |x| = delta
// and the 2 n coordinate points +-delta e_i.
double sampled_sup(const PolyMap& r, double delta, int ell, int samples, std::uint64_t seed);

struct SweepRow {
  double delta = 0.0;
  int p_opt = 0;
  double certified_bound = 0.0;
  double sampled_sup = 0.0;
  double analytic_bound = 0.0;
  bool in_range = false;
  double omega = 0.0;
};

struct SweepOptions {
  double tau = 1.0;
  double tol_res = 0.0;
  int p = 0;
  int p_cap = 60;
  int samples = 200;
  std::uint64_t seed = 12345;
};

struct SweepResult {
  Path path = Path::Uncouple;
  std::vector<SweepRow> rows;
  double b = 0.0;
  double omega = 0.0;  // from the smallest delta
  double slope = 0.0;  // of log(certified_bound) against delta^-b
  double intercept = 0.0;
  std::size_t fitted = 0;
};

SweepResult delta_sweep(const SystemSpec& sys, const std::vector<double>& deltas, Path path,
                        const SweepOptions& opt);

}  // namespace pnf
