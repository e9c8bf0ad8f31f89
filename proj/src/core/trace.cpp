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

#include "crossmesh/trace.hpp"

#include "json.hpp"

namespace crossmesh {

std::string to_json_line(const TraceRecord& record) {
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const CellSnapshot& cell : record.cells) {
    cells.push_back({{"r", cell.row}, {"c", cell.col}, {"terms", cell.terms}, {"acc", cell.acc}});
  }
  nlohmann::ordered_json line;
  line["t"] = record.t;
  line["active"] = record.active;
  line["cells"] = std::move(cells);
  return line.dump(-1, ' ', false);
}

std::string to_jsonl(const std::vector<TraceRecord>& records) {
  std::string out;
  for (const TraceRecord& r : records) {
    out += to_json_line(r);
    out += '\n';
  }
  return out;
}

}  // namespace crossmesh
