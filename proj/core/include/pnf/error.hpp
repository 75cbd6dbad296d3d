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

#include <stdexcept>
#include <string>

namespace pnf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A structural or non-resonance hypothesis on the input system fails.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

// A numerical self-check exceeded its tolerance. This signals a bug or an
// ill-conditioned input, never a user mistake.
class ToleranceFailure : public Error {
 public:
  using Error::Error;
};

// Malformed input file.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace pnf
