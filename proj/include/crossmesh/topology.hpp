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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace crossmesh {

// Index pair (i, j) of a product component c_ij, 1-based.
struct Component {
  std::uint32_t i = 0;
  std::uint32_t j = 0;

  Component transposed() const { return {j, i}; }
  bool operator==(const Component&) const = default;
  auto operator<=>(const Component&) const = default;
};

// "67" style label used by the printed tables; indices >= 10 are joined with
// a comma ("10,3") so labels stay unambiguous.
std::string label(const Component& c);

enum class PatternKind { A, B };
enum class Stream { A, B };
enum class ExitSide { Left, Right };

// Column involution routing one stream from row r to row r+1.
//
// Pattern A fixes column 1 (and column n when n is even) and swaps the
// interior pairs (2,3), (4,5), ...; pattern B swaps (1,2), (3,4), ... and
// fixes column n when n is odd.
struct WiringPattern {
  PatternKind kind;
  std::size_t n;
  std::vector<std::uint32_t> mapping;  // mapping[c-1] = destination column of source column c

  std::uint32_t destination(std::uint32_t col) const { return mapping.at(col - 1); }
  bool operator==(const WiringPattern&) const = default;
};

WiringPattern pattern_perm(PatternKind kind, std::size_t n);

// Pattern used by `stream` between row `row` and row `row + 1`: the a-stream
// takes A on odd rows and B on even rows, the b-stream the opposite.
// Requires 1 <= row <= n-1.
WiringPattern transition(Stream stream, std::size_t row, std::size_t n);

// Cell (r, c) -> component c_ij it accumulates.
class AssignmentTable {
 public:
  AssignmentTable(std::size_t n, std::vector<Component> grid);

  std::size_t order() const { return n_; }
  const Component& at(std::size_t row, std::size_t col) const;
  const std::vector<Component>& grid() const { return grid_; }

  bool operator==(const AssignmentTable&) const = default;

 private:
  std::size_t n_;
  std::vector<Component> grid_;
};

// Built by routing the row-1 diagonal streams through the transitions.
AssignmentTable assignment_table(std::size_t n);

// Entry (i, j) = rank at which c_ij leaves the array.
class ArrivalOrderMatrix {
 public:
  ArrivalOrderMatrix(std::size_t n, std::vector<std::uint64_t> ranks);

  std::size_t order() const { return n_; }
  std::uint64_t at(std::size_t i, std::size_t j) const;
  const std::vector<std::uint64_t>& ranks() const { return ranks_; }

  bool operator==(const ArrivalOrderMatrix&) const = default;

 private:
  std::size_t n_;
  std::vector<std::uint64_t> ranks_;
};

// Rows complete top to bottom; within a row results exit towards `side`.
std::uint64_t exit_rank(std::size_t n, std::size_t row, std::size_t col,
                        ExitSide side = ExitSide::Left);
ArrivalOrderMatrix arrival_order(std::size_t n, ExitSide side = ExitSide::Left);
ArrivalOrderMatrix arrival_order(const AssignmentTable& table, ExitSide side = ExitSide::Left);

enum class CheckKind { Diagonal, RowPermutation, Bijectivity, Mirror };

struct Discrepancy {
  CheckKind kind;
  std::size_t row;
  std::size_t col;
  std::optional<Component> expected;  // empty when any unused component would do
  Component found;

  bool operator==(const Discrepancy&) const = default;
};

struct MirrorPair {
  std::size_t row;
  std::size_t partner;  // n + 2 - row
  bool ok;
};

struct SymmetryReport {
  std::vector<MirrorPair> mirror_pairs;
  std::optional<bool> middle_row_self_symmetric;  // set only when n is even
  bool diagonal_ok = true;
  bool row_permutation_ok = true;
  bool bijective_ok = true;
  std::vector<Discrepancy> discrepancies;

  bool mirror_pairs_ok() const;
  bool all_ok() const;
};

// mirror(row) reverses the column order and transposes every entry. Checks
// mirror(row_r) == row_{n+2-r} for 2 <= r <= n together with the diagonal,
// per-row permutation and bijectivity invariants. Violations are collected,
// never thrown.
SymmetryReport check_symmetries(const AssignmentTable& table);

std::string to_string(CheckKind kind);

}  // namespace crossmesh
