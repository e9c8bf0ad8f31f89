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
#include <span>
#include <string>
#include <vector>

#include "crossmesh/bigint.hpp"
#include "crossmesh/metrics.hpp"
#include "crossmesh/rational.hpp"

namespace crossmesh {

// Closed-form model of a pipelined batch of N products on the n x n
// cross-wired array, next to what the simulator measured.

struct IdleCells {
  BigInt initial;  // cell-steps idle while the pipeline fills
  BigInt final;    // cell-steps idle while it drains
};

// Both halves are n^2 (n-1) / 2; together n^3 - n^2.
IdleCells idle_cells(std::uint64_t n);

// Steps of a pipelined batch, N*n + n - 1.
BigInt batch_steps(std::uint64_t batches, std::uint64_t n);

// n^2 (N n + n - 1) == (N+1) n^3 - n^2.
BigInt total_cell_steps(std::uint64_t batches, std::uint64_t n);

// N n / (n (N+1) - 1), i.e. N / (N + 1 - 1/n).
Rational efficiency_formula(std::uint64_t batches, std::uint64_t n);

// active_cell_steps / (n^2 total_steps). Throws IntegrityFault when the
// utilisation series disagrees with the counters.
Rational efficiency_measured(const BatchMetrics& metrics);

// (N n + n - 1) / N; tends to n as N grows.
Rational average_steps(std::uint64_t batches, std::uint64_t n);

// 3n - 2 for the skewed standard mesh, 2n - 1 for the cross-wired one.
std::uint64_t standard_mesh_steps(std::uint64_t n);
std::uint64_t crosswired_steps(std::uint64_t n);

struct ComparisonRow {
  std::size_t n = 0;
  std::size_t batches = 0;
  std::uint64_t steps = 0;
  std::optional<std::uint64_t> steps_standard;
  std::uint64_t active_cell_steps = 0;
  BigInt total_cell_steps;
  Rational efficiency_measured;
  Rational efficiency_formula;
  Rational avg_steps;

  bool matches() const { return efficiency_measured == efficiency_formula; }
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;

  bool all_match() const;
  // Header: n,N,steps,steps_standard,active_cell_steps,total_cell_steps,
  // efficiency_num,efficiency_den,avg_steps_num,avg_steps_den
  std::string to_csv() const;
  std::string to_json() const;
};

// One row per run, in input order. With include_baseline each row also
// carries the standard mesh's per-product step count.
ComparisonReport compare_report(std::span<const BatchMetrics> runs, bool include_baseline);

// t,active_cells
std::string utilization_csv(const BatchMetrics& metrics);

}  // namespace crossmesh
