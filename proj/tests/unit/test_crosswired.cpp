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

#include <algorithm>
#include <map>
#include <random>

#include "crossmesh/crosswired.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace crossmesh;

namespace {

IntMatrix from_rows(std::size_t n, std::initializer_list<long long> values) {
  std::vector<BigInt> elements;
  for (long long v : values) elements.emplace_back(v);
  return IntMatrix(n, std::move(elements));
}

// Cell (r,c) -> (i,j) read off the symbolic accumulators after a full run.
AssignmentTable discovered_assignment(std::size_t n) {
  auto [a, b] = symbolic_operands(n);
  const RunResult<SymbolicSum> run = run_single(a, b);
  std::vector<Component> grid(n * n);
  for (const auto& ev : run.completions) grid[(ev.row - 1) * n + (ev.col - 1)] = ev.component;
  return AssignmentTable(n, std::move(grid));
}

}  // namespace

TEST_CASE("mesh_new") {
  CHECK_THROWS_AS(CrossWiredMesh<BigInt>(0), InvalidArgument);
  for (std::size_t n : {1u, 4u, 7u}) {
    CrossWiredMesh<BigInt> mesh(n);
    CHECK(mesh.time() == 0);
    CHECK_FALSE(mesh.busy());
    for (std::size_t r = 1; r <= n; ++r) {
      for (std::size_t c = 1; c <= n; ++c) {
        CHECK(mesh.cell(r, c).term_count == 0);
        CHECK_FALSE(mesh.cell(r, c).nw_reg.has_value());
      }
    }
  }
}

TEST_CASE("top_feed streams A rows and B columns") {
  auto [a, b] = symbolic_operands(4);
  const auto t0 = top_feed(a, b, 0);
  CHECK(to_string(t0[0].first) == "a11");
  CHECK(to_string(t0[0].second) == "b11");
  CHECK(to_string(t0[1].first) == "a21");
  CHECK(to_string(t0[1].second) == "b12");
  CHECK(to_string(t0[3].first) == "a41");
  CHECK(to_string(t0[3].second) == "b14");
  const auto t1 = top_feed(a, b, 1);
  CHECK(to_string(t1[0].first) == "a12");
  CHECK(to_string(t1[0].second) == "b21");
  CHECK(to_string(t1[2].first) == "a32");
  CHECK(to_string(t1[2].second) == "b23");
  CHECK_THROWS_AS(top_feed(a, b, 4), InvalidArgument);

  auto [a1, b1] = symbolic_operands(1);
  CHECK(to_string(top_feed(a1, b1, 0)[0].first) == "a11");
}

TEST_CASE("step reproduces register spot values") {
  auto [a, b] = symbolic_operands(4);
  CrossWiredMesh<SymbolicSum> mesh(4);
  mesh.enqueue(a, b);
  mesh.step();
  mesh.step();
  CHECK(mesh.cell(2, 1).prod_sum == testing::parse_sum("a11b12"));
  mesh.step();
  mesh.step();
  CHECK(mesh.cell(4, 4).prod_sum == testing::parse_sum("a21b11"));
}

TEST_CASE("symbolic snapshots match the published t=0..3 matrices") {
  for (int t = 0; t <= 3; ++t) {
    CAPTURE(t);
    CHECK(snapshot_symbolic(4, t) == testing::published_snapshot_4(t));
  }
  CHECK_THROWS_AS(snapshot_symbolic(4, 7), InvalidArgument);
  CHECK_NOTHROW(snapshot_symbolic(4, 6));
}

TEST_CASE("run_single examples") {
  const auto one = run_single(from_rows(1, {3}), from_rows(1, {5}));
  CHECK(one.products.at(0) == from_rows(1, {15}));
  CHECK(one.steps == 1);

  const auto two = run_single(from_rows(2, {1, 2, 3, 4}), from_rows(2, {5, 6, 7, 8}));
  CHECK(two.products.at(0) == from_rows(2, {19, 22, 43, 50}));
  CHECK(two.steps == 3);

  const IntMatrix a = random_matrix(4, 1);
  const IntMatrix b = random_matrix(4, 2);
  const auto four = run_single(a, b);
  CHECK(four.products.at(0) == matmul_oracle(a, b));
  CHECK(four.steps == 7);

  CHECK_THROWS_AS(run_single(IntMatrix(2), IntMatrix(3)), DimensionMismatch);
}

TEST_CASE("run_batch examples") {
  std::vector<std::pair<IntMatrix, IntMatrix>> pairs;
  for (int k = 0; k < 3; ++k) pairs.emplace_back(random_matrix(4, 10 + k), random_matrix(4, 20 + k));
  const auto three = run_batch(pairs);
  CHECK(three.steps == 15);
  for (int k = 0; k < 3; ++k) CHECK(three.products[k] == matmul_oracle(pairs[k].first, pairs[k].second));

  pairs.erase(pairs.begin() + 1, pairs.end());
  const auto single = run_batch(pairs);
  CHECK(single.steps == 7);
  CHECK(single.metrics.active_cell_steps == 64);

  std::vector<std::pair<IntMatrix, IntMatrix>> tiny{{from_rows(1, {2}), from_rows(1, {3})},
                                                    {from_rows(1, {-4}), from_rows(1, {5})}};
  const auto degenerate = run_batch(tiny);
  CHECK(degenerate.steps == 2);
  CHECK(degenerate.products[0] == from_rows(1, {6}));
  CHECK(degenerate.products[1] == from_rows(1, {-20}));
}

TEST_CASE("run_batch input errors") {
  std::vector<std::pair<IntMatrix, IntMatrix>> empty;
  CHECK_THROWS_AS(run_batch(empty), InvalidArgument);
  std::vector<std::pair<IntMatrix, IntMatrix>> mixed{{IntMatrix(2), IntMatrix(2)},
                                                     {IntMatrix(3), IntMatrix(3)}};
  CHECK_THROWS_AS(run_batch(mixed), DimensionMismatch);
  CrossWiredMesh<BigInt> mesh(3);
  CHECK_THROWS_AS(mesh.enqueue(IntMatrix(2), IntMatrix(2)), DimensionMismatch);
}

TEST_CASE("oracle equivalence over random orders and batches") {
  std::mt19937_64 rng(2024);
  for (std::size_t n = 1; n <= 16; ++n) {
    const IntMatrix a = random_matrix(n, rng());
    const IntMatrix b = random_matrix(n, rng());
    const auto run = run_single(a, b);
    CHECK(run.products[0] == matmul_oracle(a, b));
    CHECK(run.steps == 2 * n - 1);
  }
  for (std::size_t batches = 1; batches <= 8; ++batches) {
    const std::size_t n = 1 + rng() % 6;
    std::vector<std::pair<IntMatrix, IntMatrix>> pairs;
    for (std::size_t k = 0; k < batches; ++k) pairs.emplace_back(random_matrix(n, rng()), random_matrix(n, rng()));
    const auto run = run_batch(pairs);
    CHECK(run.steps == batches * n + n - 1);
    for (std::size_t k = 0; k < batches; ++k) {
      CHECK(run.products[k] == matmul_oracle(pairs[k].first, pairs[k].second));
    }
  }
}

TEST_CASE("completion timing law and exit ranks") {
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u}) {
    std::vector<std::pair<IntMatrix, IntMatrix>> pairs;
    for (int k = 0; k < 3; ++k) pairs.emplace_back(random_matrix(n, k), random_matrix(n, 50 + k));
    const auto run = run_batch(pairs);
    REQUIRE(run.completions.size() == 3 * n * n);

    std::map<std::size_t, std::vector<const CompletionEvent<BigInt>*>> by_batch;
    for (const auto& ev : run.completions) {
      CHECK(ev.complete_t == ev.batch * n + ev.row + n - 2);
      by_batch[ev.batch].push_back(&ev);
    }
    const ArrivalOrderMatrix order = arrival_order(n);
    for (auto& [batch, events] : by_batch) {
      std::sort(events.begin(), events.end(), [](auto* x, auto* y) {
        return std::pair(x->complete_t, x->col) < std::pair(y->complete_t, y->col);
      });
      for (std::size_t k = 0; k < events.size(); ++k) {
        CHECK(events[k]->exit_rank == k + 1);
        CHECK(order.at(events[k]->component.i, events[k]->component.j) == k + 1);
      }
    }
  }
}

TEST_CASE("rows accumulate exactly inside their compute window") {
  const std::size_t n = 4;
  const std::size_t batches = 3;
  CrossWiredMesh<BigInt> mesh(n);
  for (std::size_t k = 0; k < batches; ++k) mesh.enqueue(random_matrix(n, k), random_matrix(n, k + 9));
  while (mesh.busy()) {
    mesh.step();
    const std::uint64_t t = mesh.time() - 1;
    for (std::size_t r = 1; r <= n; ++r) {
      bool expect_active = false;
      for (std::size_t m = 0; m < batches; ++m) {
        if (m * n + r - 1 <= t && t <= m * n + r + n - 2) expect_active = true;
      }
      for (std::size_t c = 1; c <= n; ++c) {
        const auto& cell = mesh.cell(r, c);
        const bool accumulating = cell.term_count > 0;
        CHECK(accumulating == expect_active);
        CHECK(cell.term_count <= n);
      }
    }
  }
}

TEST_CASE("active-count ramp") {
  const std::size_t n = 5;
  const std::size_t batches = 4;
  std::vector<std::pair<IntMatrix, IntMatrix>> pairs;
  for (std::size_t k = 0; k < batches; ++k) pairs.emplace_back(random_matrix(n, k), random_matrix(n, k + 1));
  const auto run = run_batch(pairs);
  const auto& series = run.metrics.utilization;
  REQUIRE(series.size() == batches * n + n - 1);
  std::uint64_t total = 0;
  for (std::size_t t = 0; t < series.size(); ++t) {
    CHECK(series[t].t == t);
    std::uint64_t expected = n * n;
    if (t < n - 1) expected = (t + 1) * n;
    if (t >= batches * n) expected = (batches * n + n - 1 - t) * n;
    CHECK(series[t].active_cells == expected);
    total += series[t].active_cells;
  }
  CHECK(total == batches * n * n * n);
  CHECK(run.metrics.active_cell_steps == total);
  CHECK(run.metrics.padded_input_slots == 0);
}

TEST_CASE("symbolic discovery agrees with permutation composition") {
  for (std::size_t n = 1; n <= 12; ++n) {
    CAPTURE(n);
    CHECK(discovered_assignment(n) == assignment_table(n));
  }
}

TEST_CASE("symbolic products contain matched inner indices only") {
  for (std::size_t n = 1; n <= 8; ++n) {
    auto [a, b] = symbolic_operands(n);
    const auto run = run_single(a, b);
    CHECK(run.products[0] == matmul_oracle(a, b));
  }
}

TEST_CASE("trace capture and sink see every step") {
  const IntMatrix a = random_matrix(3, 4);
  const IntMatrix b = random_matrix(3, 5);
  std::vector<TraceRecord> streamed;
  const auto run = run_single(a, b, TraceMode::Capture, [&](const TraceRecord& r) { streamed.push_back(r); });
  REQUIRE(run.trace.has_value());
  CHECK(run.trace->size() == 5);
  CHECK(streamed.size() == 5);
  CHECK(run.trace->front().active == 3);
  CHECK(run.trace->back().cells.size() == 9);
  for (const TraceRecord& r : *run.trace) CHECK(r.active <= 9);

  const auto untraced = run_single(a, b);
  CHECK_FALSE(untraced.trace.has_value());
}

TEST_CASE("trace JSON line layout") {
  auto [a, b] = symbolic_operands(1);
  const auto run = run_single(a, b, TraceMode::Capture);
  CHECK(to_json_line(run.trace->at(0)) ==
        R"({"t":0,"active":1,"cells":[{"r":1,"c":1,"terms":1,"acc":"a11·b11"}]})");
}

TEST_CASE("right exit changes ranks but not products") {
  const IntMatrix a = random_matrix(4, 8);
  const IntMatrix b = random_matrix(4, 9);
  const auto left = run_single(a, b);
  const auto right = run_single(a, b, TraceMode::Off, {}, ExitSide::Right);
  CHECK(left.products == right.products);
  for (const auto& ev : right.completions) CHECK(ev.exit_rank == (ev.row - 1) * 4 + (5 - ev.col));
}

namespace crossmesh {

struct CrossWiredMeshTestAccess {
  template <Scalar T>
  static void drop_b_operand(CrossWiredMesh<T>& mesh, std::size_t row, std::size_t col) {
    mesh.cells_[mesh.idx(row, col)].ne_reg.reset();
  }
};

}  // namespace crossmesh

TEST_CASE("a half-fed cell halts the simulation") {
  CrossWiredMesh<BigInt> mesh(3);
  mesh.enqueue(random_matrix(3, 1), random_matrix(3, 2));
  mesh.step();
  // Row 1's operands now sit in row 2 awaiting the next step.
  CrossWiredMeshTestAccess::drop_b_operand(mesh, 2, 2);
  CHECK_THROWS_AS(mesh.step(), IntegrityFault);
}
