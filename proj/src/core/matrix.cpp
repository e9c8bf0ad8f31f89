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

#include "crossmesh/matrix.hpp"

#include <random>
#include <sstream>

namespace crossmesh {

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n);
  for (std::size_t i = 1; i <= n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  IntMatrix m(n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      m.at(i, j) = static_cast<long long>(rng() % 199) - 99;
    }
  }
  return m;
}

std::pair<SymbolicMatrix, SymbolicMatrix> symbolic_operands(std::size_t n) {
  SymbolicMatrix a(n);
  SymbolicMatrix b(n);
  for (std::uint32_t r = 1; r <= n; ++r) {
    for (std::uint32_t c = 1; c <= n; ++c) {
      a.at(r, c) = SymbolicSum::a(r, c);
      b.at(r, c) = SymbolicSum::b(r, c);
    }
  }
  return {std::move(a), std::move(b)};
}

namespace {

template <Scalar T>
std::string render_with(const Matrix<T>& m, const char* sep) {
  std::ostringstream out;
  for (std::size_t i = 1; i <= m.order(); ++i) {
    for (std::size_t j = 1; j <= m.order(); ++j) {
      if (j > 1) out << sep;
      out << to_string(m.at(i, j));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string render(const IntMatrix& m) { return render_with(m, " "); }
std::string render(const SymbolicMatrix& m) { return render_with(m, " | "); }

}  // namespace crossmesh
