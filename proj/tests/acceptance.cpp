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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "checks.hpp"
#include "pnf/fixtures.hpp"
#include "pnf/io.hpp"
#include "pnf/verify.hpp"

using namespace pnf;
using pnf::testing::Rng;
using pnf::testing::Tally;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Coefficientwise agreement relative to the larger map.
double coef_gap(const PolyMap& a, const PolyMap& b) {
  return max_difference(a, b) / std::max({a.max_abs(), b.max_abs(), 1e-300});
}

bool has_uncouple_path(const SystemSpec& s) { return s.m0 > 0 && s.m1 > 0; }

bool has_normalize_path(const SystemSpec& s) {
  try {
    eigen_data(s, Path::Normalize);
    return true;
  } catch (const HypothesisViolation&) {
    return false;
  }
}

void round_trip(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(20240101);
  const auto t = testing::homological_round_trips(rng, 1000);
  const double secs = seconds_since(t0);
  o.detail << t.residual.instances << " instances (" << t.rejected
           << " near-singular redrawn), worst residual/1e-10 " << sci(t.residual.worst)
           << ", worst norm/bound " << sci(t.bound.worst) << ", " << sci(secs) << " s";
  o.require(t.residual.instances == 1000, "instance count");
  o.require(t.residual.violations == 0, "forward residual");
  o.require(t.bound.violations == 0, "solution bound");
  o.require(secs < 60.0, "runtime");
}

void oracle_equivalence(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  int compared = 0;
  for (const auto& name : fixture_names()) {
    const SystemSpec s = fixture_by_name(name);
    if (has_uncouple_path(s)) {
      for (int p = 2; p <= 3; ++p) {
        bool engine_ok = true;
        bool oracle_ok = true;
        PolyMap phi;
        OracleResult orc;
        try {
          phi = build_phi(s, eigen_data(s, Path::Uncouple), p);
        } catch (const HypothesisViolation&) {
          engine_ok = false;
        }
        try {
          orc = oracle_solve(s, p, Path::Uncouple);
        } catch (const HypothesisViolation&) {
          oracle_ok = false;
        }
        o.require(engine_ok == oracle_ok, name + " solvability differs");
        if (!engine_ok || !oracle_ok) continue;
        worst = std::max(worst, coef_gap(phi, orc.phi));
        ++compared;
      }
    }
    if (has_normalize_path(s)) {
      const EigenData eig = eigen_data(s, Path::Normalize);
      const double tol = default_tol_res(eig);
      for (int p = 2; p <= 3; ++p) {
        const PhiN r = build_phi_N(s, eig, p, tol);
        const OracleResult orc = oracle_solve(s, p, Path::Normalize, tol);
        worst = std::max({worst, coef_gap(r.phi, orc.phi), coef_gap(r.N, orc.N)});
        o.require(orc.kernel_dim == orc.expected_kernel, name + " kernel dimension");
        ++compared;
      }
    }
  }
  const double secs = seconds_since(t0);
  o.detail << compared << " comparisons over " << fixture_names().size()
           << " fixtures (resonant one rejected by both), worst relative gap " << sci(worst)
           << ", " << sci(secs) << " s";
  o.require(worst <= 1e-10, "coefficient gap");
  o.require(secs < 30.0, "runtime");
}

void defining_identities(Outcome& o) {
  double worst_unc = 0.0;
  double worst_nf = 0.0;
  int runs = 0;
  for (const auto& name : fixture_names()) {
    const SystemSpec s = fixture_by_name(name);
    for (double delta : {0.1, 0.05, 0.025}) {
      for (int p : {0, 2, 3, 4}) {
        if (has_uncouple_path(s) && name != "resonant") {
          const UncoupleResult r = uncouple(s, {.delta = delta, .p = p});
          worst_unc = std::max(
              {worst_unc, r.identity_residual, identity_residual(s, r.phi, r.R, r.d_max)});
          ++runs;
        }
        if (has_normalize_path(s)) {
          const NormalFormResult r = normalize(s, {.delta = delta, .p = p == 0 ? 0 : p});
          worst_nf = std::max(
              {worst_nf, r.conjugacy_residual, conjugacy_residual(s, r.phi, r.N, r.R, r.d_max)});
          ++runs;
        }
      }
    }
  }
  o.detail << runs << " runs, worst uncouple residual " << sci(worst_unc)
           << ", worst conjugacy residual " << sci(worst_nf);
  o.require(worst_unc <= 1e-10, "uncouple identity");
  o.require(worst_nf <= 1e-10, "conjugacy identity");
}

void gevrey(Outcome& o) {
  int checked = 0;
  double worst = 0.0;
  for (const auto& name : {"uncouple_basic", "two_dof_forced"}) {
    const SystemSpec s = fixture_by_name(name);
    for (double delta : {0.1, 0.05, 0.025}) {
      // p_opt first, then a deeper override so the bound is exercised at
      // degrees above 2.
      for (int p : {0, 8}) {
        const UncoupleResult r = uncouple(s, {.delta = delta, .p = p});
        for (const auto& [n, ratio] : r.gevrey_ratio) {
          worst = std::max(worst, ratio);
          ++checked;
        }
      }
    }
  }
  o.detail << checked << " coefficients (p_opt and p = 8), worst norm/bound " << sci(worst);
  o.require(checked > 0, "nothing checked");
  o.require(worst <= 1.0, "Gevrey bound");
}

void exponential_decay(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const SystemSpec s = basic_fixture();
  const SweepResult r = delta_sweep(s, {0.2, 0.1, 0.05, 0.025}, Path::Uncouple, {});
  bool decreasing = true;
  bool sampled = true;
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    if (i > 0) decreasing = decreasing && r.rows[i].certified_bound < r.rows[i - 1].certified_bound;
    sampled = sampled && r.rows[i].sampled_sup <= r.rows[i].certified_bound * (1.0 + 1e-12);
  }
  // The four radii lie above delta0 on this system; two more rows below it
  // exercise the analytic bound.
  const double d0 = uncouple(s, {.delta = 0.05}).report.delta0;
  const SweepResult low = delta_sweep(s, {d0 / 2, d0 / 4}, Path::Uncouple, {});
  bool analytic = true;
  int in_range = 0;
  for (const auto& row : low.rows) {
    in_range += row.in_range ? 1 : 0;
    analytic = analytic && row.certified_bound <= row.analytic_bound;
    sampled = sampled && row.sampled_sup <= row.certified_bound * (1.0 + 1e-12);
  }
  const double secs = seconds_since(t0);
  o.detail << "bounds";
  for (const auto& row : r.rows) o.detail << " " << sci(row.certified_bound);
  o.detail << ", slope " << sci(r.slope) << " vs -omega/2 = " << sci(-r.omega / 2)
           << ", below delta0 (" << sci(d0) << "): bound/analytic";
  for (const auto& row : low.rows) o.detail << " " << sci(row.certified_bound / row.analytic_bound);
  o.detail << ", " << sci(secs) << " s";
  o.require(decreasing, "strictly decreasing");
  o.require(sampled, "sampled sup above certified bound");
  o.require(r.slope <= -r.omega / 2, "slope");
  o.require(in_range == 2 && analytic, "analytic bound below delta0");
  o.require(secs < 300.0, "runtime");
}

void criteria(Outcome& o) {
  const SystemSpec s = hopf_fixture();
  const NormalFormResult r = normalize(s, {.delta = 0.05, .p = 3});
  const EigenData eig = eigen_data(s, Path::Normalize);
  PolyMap bad = r.N;
  CVector e(2);
  e << 1.0, 0.0;
  bad.add_term(MultiIndex({2, 0}), TrigPoly::constant(s.T, e));
  const double negative = check_criteria(bad, eig, 64, 99);
  const NormalFormResult forced = normalize(one_to_one_fixture(), {.delta = 0.05, .p = 3});
  o.detail << "Hopf residual " << sci(r.criteria_residual) << ", negative control "
           << sci(negative) << ", coefficient level " << sci(r.coefficient_criteria_residual)
           << "; forced 1:1 residual " << sci(forced.criteria_residual);
  o.require(!r.N.is_zero(), "empty normal form");
  o.require(r.criteria_residual <= 1e-9, "Hopf criteria");
  o.require(negative > 1e-3, "negative control");
  o.require(r.coefficient_criteria_residual <= 1e-10, "coefficient level");
  o.require(forced.criteria_residual <= 1e-9, "1:1 criteria");
}

void drift(Outcome& o) {
  const SystemSpec s = basic_fixture();
  const double t_end = 10.0 * s.T;
  const double h = s.T / 1000.0;
  const UncoupleResult r = uncouple(s, {.delta = 0.05});
  const DriftReport d = manifold_drift(s, r, 0.05, t_end, h, 17);
  const DriftReport z = manifold_drift(s, r, 0.05, t_end, h, 17, true);
  const double limit = 10.0 * t_end * r.certified_bound;
  o.detail << "p = " << r.p << ", max |v1| " << sci(d.max_v1) << " <= " << sci(limit)
           << ", with R zeroed " << sci(z.max_v1);
  o.require(!d.exited && !z.exited, "left the disk");
  o.require(d.max_v1 <= limit, "drift");
  o.require(z.max_v1 <= 1e-8, "zeroed remainder");
}

void epsilon(Outcome& o) {
  const SystemSpec s = two_dof_forced_fixture();
  double worst = 0.0;
  int tagged = 0;
  for (int p = 2; p <= 4; ++p) {
    const EpsilonSplit sp = epsilon_split(s, p);
    worst = std::max(worst, sp.max_gap);
    for (const auto& [n, h] : sp.phi.parts()) {
      for (const auto& [a, c] : h.coeffs()) {
        if (c.max_abs_mode() > 0 && c.max_abs() > 0.0) {
          ++tagged;
          o.require(a[s.epsilon_index] >= 1, "time dependence at epsilon-degree 0");
        }
      }
    }
  }
  o.detail << "p = 2..4, worst gap " << sci(worst) << ", " << tagged
           << " time-dependent coefficients all carry epsilon";
  o.require(worst <= 1e-10, "gap");
  o.require(tagged > 0, "no forcing seen");
}

void inequalities(Outcome& o) {
  Rng rng(777);
  std::vector<std::pair<std::string, Tally>> rows;
  rows.emplace_back("evaluation", testing::evaluation_bound(rng, 500));
  rows.emplace_back("product", testing::product_bound(rng, 1000));
  const auto ml = testing::multilinear_bounds(rng, 500);
  rows.emplace_back("multilinear pointwise", ml.pointwise);
  rows.emplace_back("multilinear graded", ml.graded);
  rows.emplace_back("multilinear mixed", ml.mixed);
  rows.emplace_back("derivative product", testing::derivative_product_bound(rng, 500));
  auto merge = [](Tally& into, const Tally& t) {
    into.instances += t.instances;
    into.violations += t.violations;
    into.worst = std::max(into.worst, t.worst);
  };
  Tally graph;
  Tally diff;
  Tally v1;
  for (const auto& name : {"uncouple_basic", "two_dof_forced"}) {
    const SystemSpec s = fixture_by_name(name);
    const double d0 = uncouple(s, {.delta = 0.05}).report.delta0;
    const UncoupleResult r = uncouple(s, {.delta = d0 / 2, .p = 4});
    const Tally g = testing::graph_derivative_bound(rng, s, r, 1.0, 250);
    const Tally df = testing::difference_bound(rng, s, r, 250);
    merge(graph, g);
    merge(diff, df);
    // One call takes the max over 250 sample points.
    const Transformed tr = transform(s, r.phi, r.R, r.d_max);
    v1.add(sampled_v1_constant(tr, s.m0, s.ell, r.report.delta0, 250, 5), r.report.M0);
    v1.instances += 249;
  }
  rows.emplace_back("graph derivative", graph);
  rows.emplace_back("field difference", diff);
  rows.emplace_back("transformed coupling", v1);
  for (const auto& [name, t] : rows) {
    o.detail << name << " " << t.instances << "/" << t.violations << "/" << sci(t.worst) << "; ";
    o.require(t.instances >= 500 && t.violations == 0, name);
  }
  o.detail << "(instances/violations/worst ratio)";
}

void determinism(Outcome& o) {
  int compared = 0;
  auto same = [&](const std::string& a, const std::string& b, const std::string& what) {
    ++compared;
    o.require(a == b, what);
  };
  for (const auto& name : fixture_names()) {
    const SystemSpec s = fixture_by_name(name);
    const std::string sys_text = canonical_dump(system_to_json(s));
    same(canonical_dump(system_to_json(system_from_json(Json::parse(sys_text)))), sys_text,
         name + " system");
    if (has_uncouple_path(s) && name != "resonant") {
      const UncoupleResult a = uncouple(s, {.delta = 0.05, .p = 3});
      const UncoupleResult b = uncouple(s, {.delta = 0.05, .p = 3});
      same(canonical_dump(uncouple_report(s, a)), canonical_dump(uncouple_report(s, b)),
           name + " report");
      same(canonical_dump(uncouple_results(s, a)), canonical_dump(uncouple_results(s, b)),
           name + " results");
    }
    if (has_normalize_path(s)) {
      const NormalFormResult a = normalize(s, {.delta = 0.05, .p = 3});
      const NormalFormResult b = normalize(s, {.delta = 0.05, .p = 3});
      same(canonical_dump(normalform_report(s, a)), canonical_dump(normalform_report(s, b)),
           name + " report");
      same(canonical_dump(normalform_results(s, a)), canonical_dump(normalform_results(s, b)),
           name + " results");
    }
  }
  const std::vector<double> deltas{0.2, 0.1, 0.05, 0.025};
  setenv("NF_THREADS", "1", 1);
  const SweepResult one = delta_sweep(basic_fixture(), deltas, Path::Uncouple, {.seed = 5});
  setenv("NF_THREADS", "3", 1);
  const SweepResult three = delta_sweep(basic_fixture(), deltas, Path::Uncouple, {.seed = 5});
  unsetenv("NF_THREADS");
  same(sweep_csv(one), sweep_csv(three), "sweep csv");
  same(canonical_dump(sweep_to_json(one)), canonical_dump(sweep_to_json(three)), "sweep json");
  o.detail << compared << " artifact pairs byte-identical (sweeps at 1 and 3 threads)";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria_list = {
      {"homological round trip and solution bound", round_trip},
      {"oracle equivalence at p <= 3", oracle_equivalence},
      {"defining identities", defining_identities},
      {"Gevrey bound on coefficient norms", gevrey},
      {"exponential decay of the remainder", exponential_decay},
      {"normal-form criteria", criteria},
      {"invariant-manifold drift", drift},
      {"epsilon split", epsilon},
      {"norm-inequality suite", inequalities},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria_list.size(); ++i) {
    Outcome o;
    try {
      criteria_list[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria_list[i].first.c_str(), o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria_list.size()) - failed,
              criteria_list.size());
  return failed == 0 ? 0 : 1;
}
