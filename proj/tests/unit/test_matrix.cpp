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

#include <random>

#include "crossmesh/matrix.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace crossmesh;

namespace {

IntMatrix from_rows(std::size_t n, std::initializer_list<long long> values) {
  std::vector<BigInt> elements;
  for (long long v : values) elements.emplace_back(v);
  return IntMatrix(n, std::move(elements));
}

}  // namespace

TEST_CASE("matrix construction rejects bad shapes") {
  CHECK_THROWS_AS(IntMatrix(0), InvalidArgument);
  CHECK_THROWS_AS(IntMatrix(2, std::vector<BigInt>(3)), InvalidArgument);
  IntMatrix m(3);
  CHECK(m.elements().size() == 9);
  CHECK_THROWS_AS(m.at(0, 1), InvalidArgument);
  CHECK_THROWS_AS(m.at(1, 4), InvalidArgument);
}

TEST_CASE("matmul_oracle small cases") {
  CHECK(matmul_oracle(from_rows(1, {3}), from_rows(1, {5})) == from_rows(1, {15}));
  CHECK(matmul_oracle(from_rows(2, {1, 2, 3, 4}), from_rows(2, {5, 6, 7, 8})) ==
        from_rows(2, {19, 22, 43, 50}));

  const IntMatrix m = random_matrix(4, 11);
  CHECK(matmul_oracle(identity_matrix(4), m) == m);
}

TEST_CASE("matmul_oracle rejects mismatched orders") {
  CHECK_THROWS_AS(matmul_oracle(IntMatrix(2), IntMatrix(3)), DimensionMismatch);
}

TEST_CASE("identity is neutral on both sides up to n=16") {
  for (std::size_t n = 1; n <= 16; ++n) {
    const IntMatrix m = random_matrix(n, 1000 + n);
    CHECK(matmul_oracle(m, identity_matrix(n)) == m);
    CHECK(matmul_oracle(identity_matrix(n), m) == m);
  }
}

TEST_CASE("products stay exact past 64 bits") {
  IntMatrix a(2);
  IntMatrix b(2);
  const BigInt big = BigInt(1) << 80;
  a.at(1, 1) = big;
  b.at(1, 1) = big;
  CHECK(matmul_oracle(a, b).at(1, 1) == (BigInt(1) << 160));
}

TEST_CASE("random_matrix is seeded and bounded") {
  CHECK(random_matrix(5, 42) == random_matrix(5, 42));
  CHECK_FALSE(random_matrix(5, 42) == random_matrix(5, 43));
  const IntMatrix m = random_matrix(8, 7);
  for (const BigInt& v : m.elements()) {
    CHECK(v >= -99);
    CHECK(v <= 99);
  }
}

TEST_CASE("symbolic operands multiply into product terms") {
  auto [a1, b1] = symbolic_operands(1);
  CHECK(to_string(a1.at(1, 1)) == "a11");
  CHECK(to_string(b1.at(1, 1)) == "b11");

  auto [a, b] = symbolic_operands(4);
  const SymbolicSum term = a.at(1, 2) * b.at(2, 1);
  CHECK(term == SymbolicSum(product_term(1, 2, 1)));
  CHECK(to_string(term) == "a12·b21");
}

TEST_CASE("symbolic oracle gives the n-term multiset per entry") {
  for (std::size_t n = 1; n <= 6; ++n) {
    auto [a, b] = symbolic_operands(n);
    const SymbolicMatrix c = matmul_oracle(a, b);
    for (std::uint32_t i = 1; i <= n; ++i) {
      for (std::uint32_t j = 1; j <= n; ++j) {
        SymbolicSum expected;
        for (std::uint32_t k = 1; k <= n; ++k) expected += SymbolicSum(product_term(i, k, j));
        CHECK(c.at(i, j) == expected);
      }
    }
  }
}

TEST_CASE("render lays out rows") {
  CHECK(render(from_rows(2, {1, -2, 30, 4})) == "1 -2\n30 4\n");
}
