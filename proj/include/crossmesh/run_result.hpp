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
#include <vector>

#include "crossmesh/matrix.hpp"
#include "crossmesh/metrics.hpp"
#include "crossmesh/topology.hpp"
#include "crossmesh/trace.hpp"

namespace crossmesh {

// A finished product component, latched in its cell.
template <Scalar T>
struct CompletionEvent {
  std::size_t batch = 0;  // 0-based
  std::size_t row = 0;
  std::size_t col = 0;
  Component component;
  T value{};
  std::uint64_t complete_t = 0;  // step of the n-th accumulation
  std::uint64_t exit_rank = 0;   // within the batch
};

template <Scalar T>
struct RunResult {
  std::vector<Matrix<T>> products;
  std::uint64_t steps = 0;  // last compute step + 1
  std::optional<std::vector<TraceRecord>> trace;
  BatchMetrics metrics;
  std::vector<CompletionEvent<T>> completions;  // in emission order
};

enum class TraceMode { Off, Capture };

}  // namespace crossmesh
