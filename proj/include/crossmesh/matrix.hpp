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

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crossmesh/bigint.hpp"
#include "crossmesh/error.hpp"
#include "crossmesh/symbolic.hpp"

namespace crossmesh {

// Exact scalar: zero-constructible, with exact += and *.
template <class T>
concept Scalar = std::regular<T> && requires(T a, const T& b) {
  { a += b } -> std::same_as<T&>;
  { b * b } -> std::convertible_to<T>;
  { to_string(b) } -> std::convertible_to<std::string>;
};

// Numeric operands carry no stream identity; cells fall back to the
// assignment table.
inline std::optional<std::uint32_t> a_stream_index(const BigInt&) { return std::nullopt; }
inline std::optional<std::uint32_t> b_stream_index(const BigInt&) { return std::nullopt; }

// Square n x n matrix, row-major, addressed with 1-based (row, col).
template <Scalar T>
class Matrix {
 public:
  explicit Matrix(std::size_t n) : n_(n), elements_(checked_order(n) * n) {}

  Matrix(std::size_t n, std::vector<T> elements) : n_(n), elements_(std::move(elements)) {
    if (elements_.size() != checked_order(n) * n) {
      throw InvalidArgument("matrix of order " + std::to_string(n) + " needs " +
                            std::to_string(n * n) + " elements, got " +
                            std::to_string(elements_.size()));
    }
  }

  std::size_t order() const { return n_; }

  T& at(std::size_t row, std::size_t col) { return elements_[index(row, col)]; }
  const T& at(std::size_t row, std::size_t col) const { return elements_[index(row, col)]; }

  const std::vector<T>& elements() const { return elements_; }

  bool operator==(const Matrix&) const = default;

 private:
  static std::size_t checked_order(std::size_t n) {
    if (n == 0) throw InvalidArgument("matrix order must be at least 1");
    return n;
  }

  std::size_t index(std::size_t row, std::size_t col) const {
    if (row < 1 || row > n_ || col < 1 || col > n_) {
      throw InvalidArgument("index (" + std::to_string(row) + "," + std::to_string(col) +
                            ") outside matrix of order " + std::to_string(n_));
    }
    return (row - 1) * n_ + (col - 1);
  }

  std::size_t n_;
  std::vector<T> elements_;
};

using IntMatrix = Matrix<BigInt>;
using SymbolicMatrix = Matrix<SymbolicSum>;

template <Scalar T>
void require_same_order(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.order() != b.order()) {
    throw DimensionMismatch("operand orders differ: " + std::to_string(a.order()) + " vs " +
                            std::to_string(b.order()));
  }
}

// Reference product by the triple loop, c_ij = sum_k a_ik * b_kj.
template <Scalar T>
Matrix<T> matmul_oracle(const Matrix<T>& a, const Matrix<T>& b) {
  require_same_order(a, b);
  const std::size_t n = a.order();
  Matrix<T> c(n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      T sum{};
      for (std::size_t k = 1; k <= n; ++k) sum += a.at(i, k) * b.at(k, j);
      c.at(i, j) = std::move(sum);
    }
  }
  return c;
}

IntMatrix identity_matrix(std::size_t n);

// Uniform integers in [-99, 99] from a seeded 64-bit Mersenne twister. The
// mapping from engine output to value is fixed here, so a seed gives the same
// matrix on every platform.
IntMatrix random_matrix(std::size_t n, std::uint64_t seed);

// A with atoms a_{ik} and B with atoms b_{kj}.
std::pair<SymbolicMatrix, SymbolicMatrix> symbolic_operands(std::size_t n);

// One line per row, elements separated by single spaces (numeric) or " | "
// (symbolic).
std::string render(const IntMatrix& m);
std::string render(const SymbolicMatrix& m);

}  // namespace crossmesh
