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

#include "crossmesh/topology.hpp"

#include <numeric>
#include <set>
#include <sstream>

#include "crossmesh/error.hpp"

namespace crossmesh {

std::string label(const Component& c) {
  std::ostringstream out;
  if (c.i >= 10 || c.j >= 10) {
    out << c.i << ',' << c.j;
  } else {
    out << c.i << c.j;
  }
  return out.str();
}

WiringPattern pattern_perm(PatternKind kind, std::size_t n) {
  if (n == 0) throw InvalidArgument("wiring pattern needs n >= 1");
  WiringPattern p{kind, n, std::vector<std::uint32_t>(n)};
  std::iota(p.mapping.begin(), p.mapping.end(), 1u);
  // Pattern A pairs start at column 2, pattern B at column 1.
  const std::size_t first = kind == PatternKind::A ? 2 : 1;
  for (std::size_t c = first; c + 1 <= n; c += 2) {
    p.mapping[c - 1] = static_cast<std::uint32_t>(c + 1);
    p.mapping[c] = static_cast<std::uint32_t>(c);
  }
  return p;
}

WiringPattern transition(Stream stream, std::size_t row, std::size_t n) {
  if (row < 1 || row + 1 > n) {
    throw InvalidArgument("transition row " + std::to_string(row) + " outside 1.." +
                          std::to_string(n == 0 ? 0 : n - 1));
  }
  const bool odd = row % 2 == 1;
  const bool use_a = (stream == Stream::A) == odd;
  return pattern_perm(use_a ? PatternKind::A : PatternKind::B, n);
}

AssignmentTable::AssignmentTable(std::size_t n, std::vector<Component> grid)
    : n_(n), grid_(std::move(grid)) {
  if (n_ == 0) throw InvalidArgument("assignment table needs n >= 1");
  if (grid_.size() != n_ * n_) {
    throw InvalidArgument("assignment table of order " + std::to_string(n_) + " needs " +
                          std::to_string(n_ * n_) + " entries");
  }
}

const Component& AssignmentTable::at(std::size_t row, std::size_t col) const {
  if (row < 1 || row > n_ || col < 1 || col > n_) {
    throw InvalidArgument("cell (" + std::to_string(row) + "," + std::to_string(col) +
                          ") outside table of order " + std::to_string(n_));
  }
  return grid_[(row - 1) * n_ + (col - 1)];
}

AssignmentTable assignment_table(std::size_t n) {
  if (n == 0) throw InvalidArgument("assignment table needs n >= 1");
  std::vector<std::uint32_t> a_streams(n);
  std::vector<std::uint32_t> b_streams(n);
  std::iota(a_streams.begin(), a_streams.end(), 1u);
  std::iota(b_streams.begin(), b_streams.end(), 1u);

  std::vector<Component> grid;
  grid.reserve(n * n);
  for (std::size_t row = 1;; ++row) {
    for (std::size_t c = 0; c < n; ++c) grid.push_back({a_streams[c], b_streams[c]});
    if (row == n) break;
    const WiringPattern pa = transition(Stream::A, row, n);
    const WiringPattern pb = transition(Stream::B, row, n);
    std::vector<std::uint32_t> next_a(n);
    std::vector<std::uint32_t> next_b(n);
    for (std::uint32_t c = 1; c <= n; ++c) {
      next_a[pa.destination(c) - 1] = a_streams[c - 1];
      next_b[pb.destination(c) - 1] = b_streams[c - 1];
    }
    a_streams = std::move(next_a);
    b_streams = std::move(next_b);
  }
  return AssignmentTable(n, std::move(grid));
}

ArrivalOrderMatrix::ArrivalOrderMatrix(std::size_t n, std::vector<std::uint64_t> ranks)
    : n_(n), ranks_(std::move(ranks)) {
  if (n_ == 0 || ranks_.size() != n_ * n_) {
    throw InvalidArgument("arrival order matrix needs n >= 1 and n*n entries");
  }
}

std::uint64_t ArrivalOrderMatrix::at(std::size_t i, std::size_t j) const {
  if (i < 1 || i > n_ || j < 1 || j > n_) {
    throw InvalidArgument("component (" + std::to_string(i) + "," + std::to_string(j) +
                          ") outside order " + std::to_string(n_));
  }
  return ranks_[(i - 1) * n_ + (j - 1)];
}

std::uint64_t exit_rank(std::size_t n, std::size_t row, std::size_t col, ExitSide side) {
  const std::size_t within = side == ExitSide::Left ? col : n + 1 - col;
  return static_cast<std::uint64_t>((row - 1) * n + within);
}

ArrivalOrderMatrix arrival_order(const AssignmentTable& table, ExitSide side) {
  const std::size_t n = table.order();
  std::vector<std::uint64_t> ranks(n * n, 0);
  for (std::size_t r = 1; r <= n; ++r) {
    for (std::size_t c = 1; c <= n; ++c) {
      const Component& comp = table.at(r, c);
      if (comp.i < 1 || comp.i > n || comp.j < 1 || comp.j > n) {
        throw InvalidArgument("assignment entry " + label(comp) + " outside order " +
                              std::to_string(n));
      }
      ranks[(comp.i - 1) * n + (comp.j - 1)] = exit_rank(n, r, c, side);
    }
  }
  return ArrivalOrderMatrix(n, std::move(ranks));
}

ArrivalOrderMatrix arrival_order(std::size_t n, ExitSide side) {
  return arrival_order(assignment_table(n), side);
}

bool SymmetryReport::mirror_pairs_ok() const {
  for (const MirrorPair& p : mirror_pairs) {
    if (!p.ok) return false;
  }
  return true;
}

bool SymmetryReport::all_ok() const {
  return mirror_pairs_ok() && middle_row_self_symmetric.value_or(true) && diagonal_ok &&
         row_permutation_ok && bijective_ok && discrepancies.empty();
}

SymmetryReport check_symmetries(const AssignmentTable& table) {
  const std::size_t n = table.order();
  SymmetryReport report;
  auto in_range = [n](const Component& c) { return c.i >= 1 && c.i <= n && c.j >= 1 && c.j <= n; };

  for (std::uint32_t c = 1; c <= n; ++c) {
    const Component& found = table.at(1, c);
    if (found != Component{c, c}) {
      report.diagonal_ok = false;
      report.discrepancies.push_back({CheckKind::Diagonal, 1, c, Component{c, c}, found});
    }
  }

  for (std::size_t r = 1; r <= n; ++r) {
    std::vector<bool> seen_i(n + 1, false);
    std::vector<bool> seen_j(n + 1, false);
    for (std::size_t c = 1; c <= n; ++c) {
      const Component& found = table.at(r, c);
      bool ok = in_range(found) && !seen_i[found.i] && !seen_j[found.j];
      if (in_range(found)) {
        seen_i[found.i] = true;
        seen_j[found.j] = true;
      }
      if (!ok) {
        report.row_permutation_ok = false;
        report.discrepancies.push_back({CheckKind::RowPermutation, r, c, std::nullopt, found});
      }
    }
  }

  std::set<Component> seen;
  for (std::size_t r = 1; r <= n; ++r) {
    for (std::size_t c = 1; c <= n; ++c) {
      const Component& found = table.at(r, c);
      if (!in_range(found) || !seen.insert(found).second) {
        report.bijective_ok = false;
        report.discrepancies.push_back({CheckKind::Bijectivity, r, c, std::nullopt, found});
      }
    }
  }

  // Each unordered pair {r, n+2-r} is checked once, with mismatches reported
  // on the upper row.
  for (std::size_t r = 2; r <= n; ++r) {
    const std::size_t partner = n + 2 - r;
    if (partner < r) continue;
    bool ok = true;
    const std::size_t last_col = r == partner ? (n + 1) / 2 : n;
    for (std::size_t c = 1; c <= last_col; ++c) {
      const Component expected = table.at(partner, n + 1 - c).transposed();
      const Component& found = table.at(r, c);
      if (found != expected) {
        ok = false;
        report.discrepancies.push_back({CheckKind::Mirror, r, c, expected, found});
      }
    }
    report.mirror_pairs.push_back({r, partner, ok});
    if (r == partner) report.middle_row_self_symmetric = ok;
  }
  return report;
}

std::string to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::Diagonal: return "diagonal";
    case CheckKind::RowPermutation: return "row-permutation";
    case CheckKind::Bijectivity: return "bijectivity";
    case CheckKind::Mirror: return "mirror";
  }
  return "unknown";
}

}  // namespace crossmesh
