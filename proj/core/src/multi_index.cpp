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

#include "pnf/multi_index.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pnf {

MultiIndex::MultiIndex(std::vector<int> exponents)
    : exponents_(std::move(exponents)) {
  for (int e : exponents_) {
    if (e < 0) throw std::invalid_argument("MultiIndex: negative exponent");
  }
  degree_ = std::accumulate(exponents_.begin(), exponents_.end(), 0);
}

MultiIndex MultiIndex::zero(std::size_t length) {
  return MultiIndex(std::vector<int>(length, 0));
}

MultiIndex MultiIndex::unit(std::size_t length, std::size_t j) {
  std::vector<int> e(length, 0);
  e.at(j) = 1;
  return MultiIndex(std::move(e));
}

double MultiIndex::factorial() const {
  double f = 1.0;
  for (int e : exponents_) {
    for (int i = 2; i <= e; ++i) f *= i;
  }
  return f;
}

double MultiIndex::log_factorial() const {
  double s = 0.0;
  for (int e : exponents_) s += std::lgamma(e + 1.0);
  return s;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.size() != size()) {
    throw std::invalid_argument("MultiIndex: length mismatch in sum");
  }
  std::vector<int> e(exponents_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exponents_[i];
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::lowered(std::size_t j) const {
  if (exponents_.at(j) == 0) {
    throw std::invalid_argument("MultiIndex: lowering a zero exponent");
  }
  std::vector<int> e(exponents_);
  --e[j];
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::raised(std::size_t j) const {
  std::vector<int> e(exponents_);
  ++e.at(j);
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::embedded(std::size_t total, std::size_t offset) const {
  if (offset + size() > total) {
    throw std::invalid_argument("MultiIndex: embedding out of range");
  }
  std::vector<int> e(total, 0);
  std::copy(exponents_.begin(), exponents_.end(), e.begin() + offset);
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::slice(std::size_t offset, std::size_t length) const {
  if (offset + length > size()) {
    throw std::invalid_argument("MultiIndex: slice out of range");
  }
  return MultiIndex(std::vector<int>(exponents_.begin() + offset,
                                     exponents_.begin() + offset + length));
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(exponents_[i]);
  }
  return s + ")";
}

namespace {

void enumerate_rec(int length, int remaining, std::vector<int>& cur,
                   std::vector<MultiIndex>& out) {
  const auto pos = cur.size();
  if (static_cast<int>(pos) == length - 1) {
    cur.push_back(remaining);
    out.emplace_back(cur);
    cur.pop_back();
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    cur.push_back(e);
    enumerate_rec(length, remaining - e, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_indices(int length, int degree) {
  if (length < 1 || degree < 0) {
    throw std::invalid_argument("enumerate_indices: need length >= 1, degree >= 0");
  }
  std::vector<MultiIndex> out;
  out.reserve(index_count(length, degree));
  std::vector<int> cur;
  cur.reserve(length);
  enumerate_rec(length, degree, cur, out);
  return out;
}

std::uint64_t index_count(int length, int degree) {
  // C(degree + length - 1, length - 1), computed incrementally to stay exact.
  std::uint64_t r = 1;
  const int k = length - 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(degree + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

}  // namespace pnf
