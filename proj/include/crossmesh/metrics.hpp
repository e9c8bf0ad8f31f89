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
#include <vector>

namespace crossmesh {

struct UtilizationSample {
  std::uint64_t t;
  std::uint64_t active_cells;

  bool operator==(const UtilizationSample&) const = default;
};

// Counters gathered by one engine run. A cell is active at a step iff it
// performed a multiply-accumulate during that step.
struct BatchMetrics {
  std::size_t batches = 0;  // N
  std::size_t order = 0;    // n
  std::uint64_t total_steps = 0;
  std::uint64_t active_cell_steps = 0;
  std::vector<UtilizationSample> utilization;
  // Boundary input slots inside the input window that carried no operand.
  std::uint64_t padded_input_slots = 0;

  bool operator==(const BatchMetrics&) const = default;
};

}  // namespace crossmesh
