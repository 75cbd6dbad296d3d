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

#include <string>

#include <nlohmann/json.hpp>

#include "pnf/normalform.hpp"
#include "pnf/uncouple.hpp"
#include "pnf/verify.hpp"

namespace pnf {

using Json = nlohmann::json;

// 17 significant digits, locale independent. Non-finite values give
// "inf", "-inf" or "nan".
std::string format_number(double x);

// Sorted keys, two-space indent, arrays of scalars on one line, doubles via
// format_number (non-finite ones as strings), trailing newline.
std::string canonical_dump(const Json& j);

// Accepts a JSON number or a decimal string ("inf", "-inf", "nan" allowed).
double read_number(const Json& j, const std::string& where);

SystemSpec system_from_json(const Json& j);
Json system_to_json(const SystemSpec& s);
SystemSpec load_system(const std::string& path);

// Term list [{alpha, component, modes: [{im, k, re}]}] in degree, alpha,
// component and mode order.
Json terms_to_json(const PolyMap& f);
PolyMap terms_from_json(const Json& j, int nvars, int dim, double period, const std::string& where);
// {dim, nvars, period, real, terms}
Json polymap_to_json(const PolyMap& f);
PolyMap polymap_from_json(const Json& j, const std::string& where);

// Summary printed by ingest: degree, Fourier support, modes needed at p.
Json ingest_summary(const SystemSpec& s, int p);

Json constants_to_json(const ConstantsReport& r);
Json nonresonance_to_json(const NonresonanceReport& r);

Json uncouple_report(const SystemSpec& s, const UncoupleResult& r);
Json uncouple_results(const SystemSpec& s, const UncoupleResult& r);
Json normalform_report(const SystemSpec& s, const NormalFormResult& r);
Json normalform_results(const SystemSpec& s, const NormalFormResult& r);
Json sweep_to_json(const SweepResult& r);
// Header delta,p_opt,certified_bound,sampled_sup,analytic_bound.
std::string sweep_csv(const SweepResult& r);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace pnf
