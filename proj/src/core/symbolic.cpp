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

#include "crossmesh/symbolic.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

#include "crossmesh/error.hpp"

namespace crossmesh {

Term a_atom(std::uint32_t i, std::uint32_t k) { return Term{i, k, 0, 0}; }
Term b_atom(std::uint32_t k, std::uint32_t j) { return Term{0, 0, k, j}; }
Term product_term(std::uint32_t i, std::uint32_t k, std::uint32_t j) { return Term{i, k, k, j}; }

std::string to_string(const Term& t) {
  std::ostringstream out;
  if (t.has_a()) out << 'a' << t.a_row << t.a_col;
  if (t.is_product()) out << "·";
  if (t.has_b()) out << 'b' << t.b_row << t.b_col;
  return out.str();
}

SymbolicSum::SymbolicSum(std::initializer_list<Term> terms) : terms_(terms) {
  std::sort(terms_.begin(), terms_.end());
}

SymbolicSum& SymbolicSum::operator+=(const SymbolicSum& rhs) {
  std::vector<Term> merged;
  merged.reserve(terms_.size() + rhs.terms_.size());
  std::merge(terms_.begin(), terms_.end(), rhs.terms_.begin(), rhs.terms_.end(),
             std::back_inserter(merged));
  terms_ = std::move(merged);
  return *this;
}

SymbolicSum operator*(const SymbolicSum& lhs, const SymbolicSum& rhs) {
  SymbolicSum out;
  out.terms_.reserve(lhs.terms_.size() * rhs.terms_.size());
  for (const Term& x : lhs.terms_) {
    for (const Term& y : rhs.terms_) {
      if (x.has_a() && !x.has_b() && y.has_b() && !y.has_a()) {
        out.terms_.push_back(Term{x.a_row, x.a_col, y.b_row, y.b_col});
      } else if (y.has_a() && !y.has_b() && x.has_b() && !x.has_a()) {
        out.terms_.push_back(Term{y.a_row, y.a_col, x.b_row, x.b_col});
      } else {
        throw InvalidArgument("cannot multiply symbolic terms " + to_string(x) + " and " +
                              to_string(y));
      }
    }
  }
  std::sort(out.terms_.begin(), out.terms_.end());
  return out;
}

std::string to_string(const SymbolicSum& s) {
  if (s.empty()) return "0";
  std::string out;
  for (const Term& t : s.terms()) {
    if (!out.empty()) out += " + ";
    out += to_string(t);
  }
  return out;
}

std::optional<std::uint32_t> a_stream_index(const SymbolicSum& s) {
  if (s.size() != 1 || s.terms()[0].has_b() || !s.terms()[0].has_a()) return std::nullopt;
  return s.terms()[0].a_row;
}

std::optional<std::uint32_t> b_stream_index(const SymbolicSum& s) {
  if (s.size() != 1 || s.terms()[0].has_a() || !s.terms()[0].has_b()) return std::nullopt;
  return s.terms()[0].b_col;
}

}  // namespace crossmesh
