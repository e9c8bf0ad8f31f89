// Copyright 2026 The Crossmesh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace crossmesh {

// One product term a_{i,k} * b_{k',j}, 1-based. An operand atom is a term with
// the other half left at zero: a_{i,k} alone has b_row == b_col == 0.
struct Term {
  std::uint32_t a_row = 0;
  std::uint32_t a_col = 0;
  std::uint32_t b_row = 0;
  std::uint32_t b_col = 0;

  bool has_a() const { return a_row != 0; }
  bool has_b() const { return b_row != 0; }
  bool is_product() const { return has_a() && has_b(); }

  auto operator<=>(const Term&) const = default;
};

Term a_atom(std::uint32_t i, std::uint32_t k);
Term b_atom(std::uint32_t k, std::uint32_t j);
Term product_term(std::uint32_t i, std::uint32_t k, std::uint32_t j);

// "a12·b21", "a12" or "b21".
std::string to_string(const Term& t);

// A multiset of terms. Terms are kept sorted, so structural equality is
// multiset equality regardless of the order in which they were added.
class SymbolicSum {
 public:
  SymbolicSum() = default;
  explicit SymbolicSum(Term t) : terms_{t} {}
  SymbolicSum(std::initializer_list<Term> terms);

  static SymbolicSum a(std::uint32_t i, std::uint32_t k) { return SymbolicSum(a_atom(i, k)); }
  static SymbolicSum b(std::uint32_t k, std::uint32_t j) { return SymbolicSum(b_atom(k, j)); }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  SymbolicSum& operator+=(const SymbolicSum& rhs);

  // Distributes over both sums; every pair must be one a-atom and one b-atom.
  // Throws InvalidArgument otherwise.
  friend SymbolicSum operator*(const SymbolicSum& lhs, const SymbolicSum& rhs);
  friend SymbolicSum operator+(SymbolicSum lhs, const SymbolicSum& rhs) { return lhs += rhs; }

  bool operator==(const SymbolicSum&) const = default;

 private:
  std::vector<Term> terms_;
};

// Terms joined by " + " in lexicographic order; the empty sum prints as "0".
std::string to_string(const SymbolicSum& s);

// Row index i of a lone a-atom a_{i,k}, or column index j of a lone b-atom
// b_{k,j}. Empty for anything else.
std::optional<std::uint32_t> a_stream_index(const SymbolicSum& s);
std::optional<std::uint32_t> b_stream_index(const SymbolicSum& s);

}  // namespace crossmesh
