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
#include <vector>

#include "pnf/system.hpp"

namespace pnf {

// m0 = m1 = 1, L0 = 0, L1 = -1, T = 2 pi, V1 = u0^2 cos t + u0 u1 / 2.
SystemSpec basic_fixture();

// L = sqrt(2) J on R^2 (m1 = 0), T = 2 pi: cubic damping, a quadratic part and
// a quadratic cos t term.
SystemSpec hopf_fixture();

// Two damped oscillators with quadratic coupling, first-order form, forcing
// eps^2 cos(Omega t) on the first one. The parameter eps is an E0 coordinate
// (E0 = (X1, Y1, eps), E1 = (X2, Y2)).
SystemSpec two_dof_forced_fixture();

// L0 = -1, L1 = -2, V1 = u0^2: exact resonance 2 lambda0 = lambda1.
SystemSpec resonant_fixture();

// L = J on R^2 forced at the linear frequency (T = 2 pi): time-dependent
// resonances.
SystemSpec one_to_one_fixture();

std::vector<std::string> fixture_names();
SystemSpec fixture_by_name(const std::string& name);

}  // namespace pnf
