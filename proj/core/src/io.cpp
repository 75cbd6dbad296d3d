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

#include "pnf/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "pnf/error.hpp"

namespace pnf {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void dump_to(const Json& j, int indent, std::string& out) {
  const std::string pad(indent + 2, ' ');
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_number(x) : "\"" + format_number(x) + "\"";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      if (std::all_of(j.begin(), j.end(), is_scalar)) {
        out += "[";
        bool first = true;
        for (const Json& e : j) {
          if (!first) out += ", ";
          first = false;
          dump_to(e, indent, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const Json& e : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        dump_to(e, indent + 2, out);
      }
      out += "\n" + std::string(indent, ' ') + "]";
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        dump_to(it.value(), indent + 2, out);
      }
      out += "\n" + std::string(indent, ' ') + "}";
      return;
    }
    default:
      out += j.dump();
  }
}

int read_int(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return j.get<int>();
  const double x = read_number(j, where);
  if (std::floor(x) != x || std::abs(x) > 1e9) throw SchemaError(where + ": expected an integer");
  return static_cast<int>(x);
}

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(where + (where.empty() ? "" : ".") + key + ": missing");
  return *it;
}

std::string sub(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

std::string item(const std::string& where, std::size_t i) {
  return where + "[" + std::to_string(i) + "]";
}

Complex read_complex(const Json& j, const std::string& where) {
  if (j.is_object()) {
    const double re = j.contains("re") ? read_number(j["re"], sub(where, "re")) : 0.0;
    const double im = j.contains("im") ? read_number(j["im"], sub(where, "im")) : 0.0;
    return {re, im};
  }
  if (j.is_array()) {
    if (j.size() != 2) throw SchemaError(where + ": expected [re, im]");
    return {read_number(j[0], item(where, 0)), read_number(j[1], item(where, 1))};
  }
  return {read_number(j, where), 0.0};
}

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

RMatrix read_matrix(const Json& j, int n, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    throw SchemaError(where + ": expected " + std::to_string(n) + " rows");
  }
  RMatrix a(n, n);
  for (int r = 0; r < n; ++r) {
    const Json& row = j[r];
    const std::string w = item(where, r);
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw SchemaError(w + ": expected " + std::to_string(n) + " entries");
    }
    for (int c = 0; c < n; ++c) a(r, c) = read_number(row[c], item(w, c));
  }
  return a;
}

Json matrix_json(const RMatrix& a) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < a.cols(); ++c) row.push_back(a(r, c));
    rows.push_back(row);
  }
  return rows;
}

LinearBlock read_block(const Json& j, int n, const std::string& where) {
  LinearBlock b;
  b.matrix = read_matrix(field(j, "matrix", where), n, sub(where, "matrix"));
  if (j.contains("eigvals")) {
    const Json& v = j["eigvals"];
    const std::string w = sub(where, "eigvals");
    if (!v.is_array() || static_cast<int>(v.size()) != n) {
      throw SchemaError(w + ": expected " + std::to_string(n) + " entries");
    }
    b.eigvals = CVector(n);
    for (int i = 0; i < n; ++i) b.eigvals[i] = read_complex(v[i], item(w, i));
  }
  if (j.contains("eigvecs")) {
    const Json& v = j["eigvecs"];
    const std::string w = sub(where, "eigvecs");
    if (!v.is_array() || static_cast<int>(v.size()) != n) {
      throw SchemaError(w + ": expected " + std::to_string(n) + " eigenvectors");
    }
    b.eigvecs = CMatrix(n, n);
    for (int c = 0; c < n; ++c) {
      const std::string wc = item(w, c);
      if (!v[c].is_array() || static_cast<int>(v[c].size()) != n) {
        throw SchemaError(wc + ": expected " + std::to_string(n) + " entries");
      }
      for (int r = 0; r < n; ++r) b.eigvecs(r, c) = read_complex(v[c][r], item(wc, r));
    }
  }
  if (j.contains("nu")) b.nu = read_int(j["nu"], sub(where, "nu"));
  return b;
}

Json block_json(const LinearBlock& b) {
  Json j{{"matrix", matrix_json(b.matrix)}};
  if (b.eigvals.size() > 0) {
    Json v = Json::array();
    for (Eigen::Index i = 0; i < b.eigvals.size(); ++i) v.push_back(complex_json(b.eigvals[i]));
    j["eigvals"] = v;
  }
  if (b.eigvecs.size() > 0) {
    Json v = Json::array();
    for (Eigen::Index c = 0; c < b.eigvecs.cols(); ++c) {
      Json col = Json::array();
      for (Eigen::Index r = 0; r < b.eigvecs.rows(); ++r) col.push_back(complex_json(b.eigvecs(r, c)));
      v.push_back(col);
    }
    j["eigvecs"] = v;
  }
  if (b.nu > 0) j["nu"] = b.nu;
  return j;
}

Json tuple_json(const DivisorTuple& t) {
  return Json{{"alpha", t.a.exponents()}, {"k", t.k}, {"j", t.j},
              {"re", t.value.real()}, {"im", t.value.imag()}, {"weighted", t.weighted}};
}

Json tuples_json(const std::vector<DivisorTuple>& ts, std::size_t cap) {
  Json a = Json::array();
  for (std::size_t i = 0; i < ts.size() && i < cap; ++i) a.push_back(tuple_json(ts[i]));
  return a;
}

Json int_map_json(const std::map<int, double>& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[std::to_string(k)] = v;
  return j;
}

Json strings_json(const std::vector<std::string>& v) {
  Json a = Json::array();
  for (const std::string& s : v) a.push_back(s);
  return a;
}

}  // namespace

std::string canonical_dump(const Json& j) {
  std::string out;
  dump_to(j, 0, out);
  out += "\n";
  return out;
}

double read_number(const Json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    double x = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec == std::errc() && res.ptr == s.data() + s.size() && !s.empty()) return x;
    throw SchemaError(where + ": cannot parse \"" + s + "\" as a number");
  }
  throw SchemaError(where + ": expected a number");
}

Json terms_to_json(const PolyMap& f) {
  Json terms = Json::array();
  for (const auto& [n, h] : f.parts()) {
    for (const auto& [a, c] : h.coeffs()) {
      for (int comp = 0; comp < f.dim(); ++comp) {
        Json modes = Json::array();
        for (const auto& [k, v] : c.modes()) {
          if (v[comp] == Complex(0.0, 0.0)) continue;
          modes.push_back(Json{{"k", k}, {"re", v[comp].real()}, {"im", v[comp].imag()}});
        }
        if (modes.empty()) continue;
        terms.push_back(Json{{"alpha", a.exponents()}, {"component", comp}, {"modes", modes}});
      }
    }
  }
  return terms;
}

PolyMap terms_from_json(const Json& j, int nvars, int dim, double period, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array of terms");
  PolyMap f(nvars, dim, period);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = item(where, i);
    const Json& t = j[i];
    const int comp = read_int(field(t, "component", w), sub(w, "component"));
    if (comp < 0 || comp >= dim) throw SchemaError(sub(w, "component") + ": out of range");
    const Json& aj = field(t, "alpha", w);
    if (!aj.is_array() || static_cast<int>(aj.size()) != nvars) {
      throw SchemaError(sub(w, "alpha") + ": expected " + std::to_string(nvars) + " exponents");
    }
    std::vector<int> ex(nvars);
    for (int v = 0; v < nvars; ++v) {
      ex[v] = read_int(aj[v], item(sub(w, "alpha"), v));
      if (ex[v] < 0) throw SchemaError(item(sub(w, "alpha"), v) + ": negative exponent");
    }
    const MultiIndex a(std::move(ex));
    if (a.degree() < 2) throw SchemaError(sub(w, "alpha") + ": degree must be >= 2");
    const Json& mj = field(t, "modes", w);
    if (!mj.is_array()) throw SchemaError(sub(w, "modes") + ": expected an array");
    TrigPoly c(period, dim);
    for (std::size_t q = 0; q < mj.size(); ++q) {
      const std::string wm = item(sub(w, "modes"), q);
      const int k = read_int(field(mj[q], "k", wm), sub(wm, "k"));
      CVector v = CVector::Zero(dim);
      v[comp] = read_complex(mj[q], wm);
      c.add_to_mode(k, v);
    }
    f.add_term(a, c);
  }
  const double scale = f.max_abs();
  for (const auto& [n, h] : f.parts()) {
    for (const auto& [a, c] : h.coeffs()) {
      if (c.conjugate_asymmetry() > kRealnessTolerance * std::max(scale, 1e-300)) {
        throw SchemaError(where + ": coefficient of " + a.to_string() +
                          " is not real-valued (mode -k must be the conjugate of mode k)");
      }
    }
  }
  f.mark_real(scale);
  return f;
}

Json polymap_to_json(const PolyMap& f) {
  return Json{{"nvars", f.nvars()}, {"dim", f.dim()}, {"period", f.period()},
              {"real", f.real()}, {"terms", terms_to_json(f)}};
}

PolyMap polymap_from_json(const Json& j, const std::string& where) {
  const int nvars = read_int(field(j, "nvars", where), sub(where, "nvars"));
  const int dim = read_int(field(j, "dim", where), sub(where, "dim"));
  const double period = read_number(field(j, "period", where), sub(where, "period"));
  if (nvars < 1 || dim < 1 || !(period > 0.0)) throw SchemaError(where + ": bad shape");
  return terms_from_json(field(j, "terms", where), nvars, dim, period, sub(where, "terms"));
}

SystemSpec system_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("top level: expected an object");
  SystemSpec s;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw SchemaError("name: expected a string");
    s.name = j["name"].get<std::string>();
  }
  s.T = read_number(field(j, "T", ""), "T");
  if (!(s.T > 0.0)) throw SchemaError("T: must be positive");
  s.m0 = read_int(field(j, "m0", ""), "m0");
  s.m1 = read_int(field(j, "m1", ""), "m1");
  if (s.m0 < 0 || s.m1 < 0 || s.m0 + s.m1 < 1) throw SchemaError("m0, m1: need m0 + m1 >= 1");
  s.L0 = read_block(field(j, "L0", ""), s.m0, "L0");
  s.L1 = read_block(field(j, "L1", ""), s.m1, "L1");
  s.V = terms_from_json(field(j, "V", ""), s.m(), s.m(), s.T, "V");
  s.c = read_number(field(j, "c", ""), "c");
  s.rho = read_number(field(j, "rho", ""), "rho");
  s.ell = read_int(field(j, "ell", ""), "ell");
  if (j.contains("epsilon_index")) s.epsilon_index = read_int(j["epsilon_index"], "epsilon_index");
  if (j.contains("params")) {
    const Json& p = j["params"];
    if (!p.is_object()) throw SchemaError("params: expected an object");
    for (auto it = p.begin(); it != p.end(); ++it) {
      s.params[it.key()] = read_number(it.value(), "params." + it.key());
    }
  }
  s.validate();
  return s;
}

Json system_to_json(const SystemSpec& s) {
  Json j{{"name", s.name}, {"T", s.T}, {"m0", s.m0}, {"m1", s.m1},
         {"L0", block_json(s.L0)}, {"L1", block_json(s.L1)}, {"V", terms_to_json(s.V)},
         {"c", s.c}, {"rho", s.rho}, {"ell", s.ell}};
  if (s.epsilon_index >= 0) j["epsilon_index"] = s.epsilon_index;
  if (!s.params.empty()) j["params"] = s.params;
  return j;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

SystemSpec load_system(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_text(path));
  } catch (const Json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return system_from_json(j);
}

Json ingest_summary(const SystemSpec& s, int p) {
  std::set<int> support;
  std::size_t terms = 0;
  for (const auto& [n, h] : s.V.parts()) {
    terms += h.term_count();
    for (const auto& [a, c] : h.coeffs()) {
      const std::set<int> sp = c.support();
      support.insert(sp.begin(), sp.end());
    }
  }
  return Json{{"name", s.name}, {"m0", s.m0}, {"m1", s.m1}, {"deg_V", s.deg_V()},
              {"terms", terms}, {"fourier_support", std::vector<int>(support.begin(), support.end())},
              {"max_mode", s.max_mode()}, {"p", p}, {"k_needed", s.modes_needed(p)}};
}

Json constants_to_json(const ConstantsReport& r) {
  Json values = Json::object();
  for (const auto& [k, v] : r.values()) values[k] = v;
  Json notes = Json::object();
  for (const auto& [k, v] : r.notes()) notes[k] = v;
  return Json{{"path", path_name(r.path)}, {"values", values}, {"notes", notes},
              {"delta_in_range", r.delta_in_range}, {"exponent_condition", r.exponent_condition}};
}

Json nonresonance_to_json(const NonresonanceReport& r) {
  constexpr std::size_t cap = 200;
  Json j{{"path", path_name(r.path)}, {"tau", r.tau}, {"tol_res", r.tol_res},
         {"degree_max", r.degree_max}, {"fourier_max", r.fourier_max}, {"scanned", r.scanned},
         {"gamma_eff", r.gamma_eff}, {"resonant_count", r.resonant.size()},
         {"borderline_count", r.borderline.size()}, {"resonant", tuples_json(r.resonant, cap)},
         {"borderline", tuples_json(r.borderline, cap)},
         {"literal_hypothesis_holds", r.literal_hypothesis_holds()}};
  j["worst"] = r.has_worst ? tuple_json(r.worst) : Json();
  return j;
}

Json uncouple_report(const SystemSpec& s, const UncoupleResult& r) {
  Json j{{"command", "uncouple"}, {"system", s.name}, {"p", r.p}, {"d_max", r.d_max},
         {"delta", r.delta}, {"constants", constants_to_json(r.report)},
         {"nonresonance", nonresonance_to_json(r.nonres)}, {"phi_norms", int_map_json(r.phi_norms)},
         {"gevrey_ratio", int_map_json(r.gevrey_ratio)}, {"identity_residual", r.identity_residual},
         {"certified_bound", r.certified_bound},
         {"analytic_bound", r.report.remainder_bound(r.delta)}, {"warnings", strings_json(r.warnings)}};
  j["phi_2"] = terms_to_json(r.phi_2);
  return j;
}

Json uncouple_results(const SystemSpec& s, const UncoupleResult& r) {
  return Json{{"system", s.name}, {"p", r.p}, {"d_max", r.d_max},
              {"phi", polymap_to_json(r.phi)}, {"R", polymap_to_json(r.R)}};
}

Json normalform_report(const SystemSpec& s, const NormalFormResult& r) {
  return Json{{"command", "normalize"}, {"system", s.name}, {"p", r.p}, {"d_max", r.d_max},
              {"delta", r.delta}, {"constants", constants_to_json(r.report)},
              {"nonresonance", nonresonance_to_json(r.nonres)},
              {"phi_norms", int_map_json(r.phi_norms)}, {"N_norms", int_map_json(r.N_norms)},
              {"conjugacy_residual", r.conjugacy_residual},
              {"criteria_residual", r.criteria_residual},
              {"literal_criteria_residual", r.literal_criteria_residual},
              {"coefficient_criteria_residual", r.coefficient_criteria_residual},
              {"certified_bound", r.certified_bound},
              {"analytic_bound", r.report.remainder_bound(r.delta)},
              {"N", terms_to_json(r.N)}, {"warnings", strings_json(r.warnings)}};
}

Json normalform_results(const SystemSpec& s, const NormalFormResult& r) {
  return Json{{"system", s.name}, {"p", r.p}, {"d_max", r.d_max},
              {"phi", polymap_to_json(r.phi)}, {"N", polymap_to_json(r.N)},
              {"R", polymap_to_json(r.R)}};
}

Json sweep_to_json(const SweepResult& r) {
  Json rows = Json::array();
  for (const SweepRow& row : r.rows) {
    rows.push_back(Json{{"delta", row.delta}, {"p_opt", row.p_opt},
                        {"certified_bound", row.certified_bound}, {"sampled_sup", row.sampled_sup},
                        {"analytic_bound", row.analytic_bound}, {"in_range", row.in_range},
                        {"omega", row.omega}});
  }
  return Json{{"path", path_name(r.path)}, {"b", r.b}, {"omega", r.omega}, {"slope", r.slope},
              {"intercept", r.intercept}, {"fitted", r.fitted}, {"rows", rows}};
}

std::string sweep_csv(const SweepResult& r) {
  std::string out = "delta,p_opt,certified_bound,sampled_sup,analytic_bound\n";
  for (const SweepRow& row : r.rows) {
    out += format_number(row.delta) + "," + std::to_string(row.p_opt) + "," +
           format_number(row.certified_bound) + "," + format_number(row.sampled_sup) + "," +
           format_number(row.analytic_bound) + "\n";
  }
  return out;
}

}  // namespace pnf
