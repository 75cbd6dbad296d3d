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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace pnf {

// Exponent vector of a monomial X^alpha. Ordering is lexicographic on the
// exponents, which is also the order produced by enumerate_indices().
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);

  static MultiIndex zero(std::size_t length);
  static MultiIndex unit(std::size_t length, std::size_t j);

  std::size_t size() const { return exponents_.size(); }
  int degree() const { return degree_; }
  int operator[](std::size_t i) const { return exponents_[i]; }
  const std::vector<int>& exponents() const { return exponents_; }

  // alpha! = alpha_1! ... alpha_m!
  double factorial() const;
  // log(alpha!), for weights at high degree.
  double log_factorial() const;

  MultiIndex operator+(const MultiIndex& other) const;
  // alpha - sigma_j. Requires alpha_j > 0.
  MultiIndex lowered(std::size_t j) const;
  MultiIndex raised(std::size_t j) const;
  // Places this index at [offset, offset + size()) inside a zero index of
  // length `total`.
  MultiIndex embedded(std::size_t total, std::size_t offset) const;
  MultiIndex slice(std::size_t offset, std::size_t length) const;

  std::string to_string() const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.exponents_ == b.exponents_;
  }
  friend std::strong_ordering operator<=>(const MultiIndex& a,
                                          const MultiIndex& b) {
    return a.exponents_ <=> b.exponents_;
  }

 private:
  std::vector<int> exponents_;
  int degree_ = 0;
};

// All multi-indices of the given length and total degree, lexicographic.
std::vector<MultiIndex> enumerate_indices(int length, int degree);

// C(degree + length - 1, length - 1).
std::uint64_t index_count(int length, int degree);

}  // namespace pnf
