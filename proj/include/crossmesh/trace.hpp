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
#include <functional>
#include <string>
#include <vector>

namespace crossmesh {

struct CellSnapshot {
  std::size_t row;
  std::size_t col;
  std::size_t terms;
  std::string acc;
};

// State of the whole array right after the compute phase of step t.
struct TraceRecord {
  std::uint64_t t = 0;
  std::size_t active = 0;
  std::vector<CellSnapshot> cells;  // row-major
};

// Append-only consumer of trace records, called once per step in order.
using TraceSink = std::function<void(const TraceRecord&)>;

// {"t":..,"active":..,"cells":[{"r":..,"c":..,"terms":..,"acc":".."},...]}
// without a trailing newline.
std::string to_json_line(const TraceRecord& record);

// One record per line.
std::string to_jsonl(const std::vector<TraceRecord>& records);

}  // namespace crossmesh
