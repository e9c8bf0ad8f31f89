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

#include "crossmesh/crosswired.hpp"

namespace crossmesh {

SymbolicMatrix snapshot_symbolic(std::size_t n, std::uint64_t t_stop) {
  if (n == 0) throw InvalidArgument("mesh order must be at least 1");
  if (t_stop > 2 * n - 2) {
    throw InvalidArgument("snapshot time " + std::to_string(t_stop) + " outside 0.." +
                          std::to_string(2 * n - 2));
  }
  auto [a, b] = symbolic_operands(n);
  CrossWiredMesh<SymbolicSum> mesh(n);
  mesh.enqueue(std::move(a), std::move(b));
  for (std::uint64_t t = 0; t <= t_stop; ++t) mesh.step();
  return mesh.accumulators();
}

}  // namespace crossmesh
