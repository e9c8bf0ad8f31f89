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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crossmesh/topology.hpp"

namespace crossmesh {

// CSV: one table row per line, cells separated by commas, each cell "i j".
std::string assignment_csv(const AssignmentTable& table);
// JSON: nested arrays of [i, j] pairs.
std::string assignment_json(const AssignmentTable& table);

std::string arrival_csv(const ArrivalOrderMatrix& order);
std::string arrival_json(const ArrivalOrderMatrix& order);

std::string symmetry_json(const SymmetryReport& report);
std::string symmetry_text(const SymmetryReport& report);

// Golden-table text: whitespace-separated entries, one table row per line,
// '#' starts a comment. Assignment entries are two-digit "ij" labels.
AssignmentTable parse_assignment_text(std::string_view text);
ArrivalOrderMatrix parse_arrival_text(std::string_view text);

// Reference tables shipped with the library (n = 4 and n = 7 for the
// assignment, n = 4 for the arrival order). Empty for other orders.
std::optional<AssignmentTable> reference_assignment(std::size_t n);
std::optional<ArrivalOrderMatrix> reference_arrival(std::size_t n);

struct TableDeviation {
  std::size_t row;
  std::size_t col;
  Component reference;
  Component derived;
};

struct ReferenceComparison {
  std::size_t n = 0;
  bool available = false;
  std::size_t entries_compared = 0;
  std::vector<TableDeviation> assignment_deviations;
  // (i, j, reference rank, derived rank)
  struct RankDeviation {
    std::size_t i, j;
    std::uint64_t reference, derived;
  };
  std::vector<RankDeviation> arrival_deviations;
  bool arrival_available = false;

  // "match" or "match except (2,7): paper=76 derived=67"
  std::string summary() const;
};

ReferenceComparison compare_with_reference(std::size_t n);

}  // namespace crossmesh
