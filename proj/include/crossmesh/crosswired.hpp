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
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crossmesh/error.hpp"
#include "crossmesh/matrix.hpp"
#include "crossmesh/run_result.hpp"
#include "crossmesh/topology.hpp"
#include "crossmesh/trace.hpp"

namespace crossmesh {

struct CrossWiredMeshTestAccess;

template <Scalar T>
struct CellState {
  std::size_t row = 0;
  std::size_t col = 0;
  // Operands consumed by the next compute phase.
  std::optional<T> nw_reg;
  std::optional<T> ne_reg;
  T prod_sum{};
  std::size_t term_count = 0;
  std::optional<std::uint32_t> a_stream;
  std::optional<std::uint32_t> b_stream;
  std::optional<std::size_t> batch;
  // Finished sum stays visible until the next step clears it.
  bool latched = false;
};

// Operands entering the top row at local step `local_t` of a batch: column j
// gets (a_{j, local_t+1}, b_{local_t+1, j}).
template <Scalar T>
std::vector<std::pair<T, T>> top_feed(const Matrix<T>& a, const Matrix<T>& b, std::size_t local_t) {
  require_same_order(a, b);
  const std::size_t n = a.order();
  if (local_t >= n) {
    throw InvalidArgument("feed step " + std::to_string(local_t) + " outside 0.." +
                          std::to_string(n - 1));
  }
  std::vector<std::pair<T, T>> feed;
  feed.reserve(n);
  for (std::size_t j = 1; j <= n; ++j) feed.emplace_back(a.at(j, local_t + 1), b.at(local_t + 1, j));
  return feed;
}

// Synchronous model of the cross-wired (2DC) array.
//
// One call to step() is one clock: latched results are cleared, row 1 is
// loaded from the batch being fed, every cell holding both operands
// multiplies and accumulates, then each row-r operand moves to row r+1 along
// transition(stream, r, n). Row n's operands leave the array.
//
// Batches are fed back to back: batch m enters row 1 at t = m*n when all
// batches are queued before the first step.
template <Scalar T>
class CrossWiredMesh {
 public:
  explicit CrossWiredMesh(std::size_t n, ExitSide exit_side = ExitSide::Left)
      : n_(checked(n)),
        exit_side_(exit_side),
        table_(assignment_table(n)),
        cells_(n * n),
        nw_batch_(n * n),
        ne_batch_(n * n) {
    for (std::size_t r = 1; r <= n_; ++r) {
      for (std::size_t c = 1; c <= n_; ++c) {
        cells_[idx(r, c)].row = r;
        cells_[idx(r, c)].col = c;
      }
    }
    for (std::size_t r = 1; r < n_; ++r) {
      a_routes_.push_back(transition(Stream::A, r, n_));
      b_routes_.push_back(transition(Stream::B, r, n_));
    }
  }

  std::size_t order() const { return n_; }
  std::uint64_t time() const { return t_; }
  std::size_t last_active() const { return last_active_; }
  std::uint64_t padded_input_slots() const { return padded_slots_; }
  const AssignmentTable& assignment() const { return table_; }

  const CellState<T>& cell(std::size_t row, std::size_t col) const {
    if (row < 1 || row > n_ || col < 1 || col > n_) {
      throw InvalidArgument("cell (" + std::to_string(row) + "," + std::to_string(col) +
                            ") outside mesh of order " + std::to_string(n_));
    }
    return cells_[idx(row, col)];
  }

  // Returns the 0-based batch index.
  std::size_t enqueue(Matrix<T> a, Matrix<T> b) {
    require_same_order(a, b);
    if (a.order() != n_) {
      throw DimensionMismatch("batch of order " + std::to_string(a.order()) +
                              " fed to mesh of order " + std::to_string(n_));
    }
    queue_.push_back({std::move(a), std::move(b), next_batch_});
    return next_batch_++;
  }

  // Pending input, in-flight operands or unfinished accumulations.
  bool busy() const {
    if (feeding_ || !queue_.empty()) return true;
    for (const CellState<T>& cell : cells_) {
      if (cell.nw_reg || cell.ne_reg || (cell.term_count > 0 && !cell.latched)) return true;
    }
    return false;
  }

  std::vector<CompletionEvent<T>> step() {
    for (CellState<T>& cell : cells_) {
      if (cell.latched) retire(cell);
    }
    load_top_row();

    std::vector<CompletionEvent<T>> events;
    std::size_t active = 0;
    for (std::size_t r = 1; r <= n_; ++r) {
      for (std::size_t c = 1; c <= n_; ++c) {
        if (compute(r, c, events)) ++active;
      }
    }
    last_active_ = active;

    route();
    ++t_;
    return events;
  }

  // Accumulator contents, indexed by cell.
  Matrix<T> accumulators() const {
    Matrix<T> grid(n_);
    for (const CellState<T>& cell : cells_) grid.at(cell.row, cell.col) = cell.prod_sum;
    return grid;
  }

  // Trace record for the step just executed.
  TraceRecord snapshot() const {
    TraceRecord record;
    record.t = t_ == 0 ? 0 : t_ - 1;
    record.active = last_active_;
    record.cells.reserve(cells_.size());
    for (const CellState<T>& cell : cells_) {
      record.cells.push_back({cell.row, cell.col, cell.term_count, to_string(cell.prod_sum)});
    }
    return record;
  }

 private:
  friend struct CrossWiredMeshTestAccess;

  struct Pending {
    Matrix<T> a;
    Matrix<T> b;
    std::size_t batch;
  };

  static std::size_t checked(std::size_t n) {
    if (n == 0) throw InvalidArgument("mesh order must be at least 1");
    return n;
  }

  std::size_t idx(std::size_t r, std::size_t c) const { return (r - 1) * n_ + (c - 1); }

  void retire(CellState<T>& cell) {
    cell.prod_sum = T{};
    cell.term_count = 0;
    cell.a_stream.reset();
    cell.b_stream.reset();
    cell.batch.reset();
    cell.latched = false;
  }

  void load_top_row() {
    if (!feeding_ && !queue_.empty()) {
      current_.emplace(std::move(queue_.front()));
      queue_.pop_front();
      feeding_ = true;
      feed_pos_ = 0;
      // Idle clocks between two feeds are unused input slots on both edges.
      if (last_feed_t_ && t_ > *last_feed_t_ + 1) {
        padded_slots_ += (t_ - *last_feed_t_ - 1) * 2 * n_;
      }
    }
    if (!feeding_) return;

    auto feed = top_feed(current_->a, current_->b, feed_pos_);
    for (std::size_t c = 1; c <= n_; ++c) {
      CellState<T>& cell = cells_[idx(1, c)];
      cell.nw_reg = std::move(feed[c - 1].first);
      cell.ne_reg = std::move(feed[c - 1].second);
      nw_batch_[idx(1, c)] = current_->batch;
      ne_batch_[idx(1, c)] = current_->batch;
    }
    last_feed_t_ = t_;
    if (++feed_pos_ == n_) {
      feeding_ = false;
      current_.reset();
    }
  }

  [[noreturn]] void fault(std::size_t r, std::size_t c, const std::string& what) const {
    throw IntegrityFault("cell (" + std::to_string(r) + "," + std::to_string(c) + ") at t=" +
                         std::to_string(t_) + ": " + what);
  }

  bool compute(std::size_t r, std::size_t c, std::vector<CompletionEvent<T>>& events) {
    CellState<T>& cell = cells_[idx(r, c)];
    const bool has_a = cell.nw_reg.has_value();
    const bool has_b = cell.ne_reg.has_value();
    if (has_a != has_b) fault(r, c, has_a ? "a-operand without b-operand" : "b-operand without a-operand");
    if (!has_a) {
      if (cell.term_count > 0 && !cell.latched) fault(r, c, "accumulation starved of operands");
      return false;
    }

    const std::size_t batch = *nw_batch_[idx(r, c)];
    if (*ne_batch_[idx(r, c)] != batch) fault(r, c, "operands from different batches");

    // Symbolic atoms name their own stream; numeric operands take the
    // cell's entry in the assignment table.
    const std::uint32_t i = a_stream_index(*cell.nw_reg).value_or(table_.at(r, c).i);
    const std::uint32_t j = b_stream_index(*cell.ne_reg).value_or(table_.at(r, c).j);
    if (cell.term_count == 0) {
      cell.batch = batch;
      cell.a_stream = i;
      cell.b_stream = j;
    } else if (cell.batch != batch || cell.a_stream != i || cell.b_stream != j) {
      fault(r, c, "operand stream changed mid-accumulation");
    }

    cell.prod_sum += (*cell.nw_reg) * (*cell.ne_reg);
    ++cell.term_count;

    if (cell.term_count == n_) {
      CompletionEvent<T> ev;
      ev.batch = batch;
      ev.row = r;
      ev.col = c;
      ev.component = Component{i, j};
      ev.value = cell.prod_sum;
      ev.complete_t = t_;
      ev.exit_rank = exit_rank(n_, r, c, exit_side_);
      events.push_back(std::move(ev));
      cell.latched = true;
    }
    return true;
  }

  void route() {
    for (std::size_t r = n_; r >= 1; --r) {
      for (std::size_t c = 1; c <= n_; ++c) {
        CellState<T>& src = cells_[idx(r, c)];
        if (r == n_) {
          src.nw_reg.reset();
          src.ne_reg.reset();
          continue;
        }
        // Row r+1 was already moved on, so its registers are free.
        const std::size_t a_dest = idx(r + 1, a_routes_[r - 1].destination(static_cast<std::uint32_t>(c)));
        const std::size_t b_dest = idx(r + 1, b_routes_[r - 1].destination(static_cast<std::uint32_t>(c)));
        cells_[a_dest].nw_reg = std::move(src.nw_reg);
        cells_[b_dest].ne_reg = std::move(src.ne_reg);
        nw_batch_[a_dest] = nw_batch_[idx(r, c)];
        ne_batch_[b_dest] = ne_batch_[idx(r, c)];
        src.nw_reg.reset();
        src.ne_reg.reset();
      }
    }
  }

  std::size_t n_;
  ExitSide exit_side_;
  AssignmentTable table_;
  std::vector<CellState<T>> cells_;
  std::vector<std::optional<std::size_t>> nw_batch_;
  std::vector<std::optional<std::size_t>> ne_batch_;
  std::vector<WiringPattern> a_routes_;
  std::vector<WiringPattern> b_routes_;

  std::deque<Pending> queue_;
  std::optional<Pending> current_;
  bool feeding_ = false;
  std::size_t feed_pos_ = 0;
  std::size_t next_batch_ = 0;
  std::optional<std::uint64_t> last_feed_t_;
  std::uint64_t padded_slots_ = 0;

  std::uint64_t t_ = 0;
  std::size_t last_active_ = 0;
};

namespace detail {

template <Scalar T>
std::size_t batch_order(std::span<const std::pair<Matrix<T>, Matrix<T>>> pairs) {
  if (pairs.empty()) throw InvalidArgument("batch must contain at least one matrix pair");
  const std::size_t n = pairs.front().first.order();
  for (const auto& [a, b] : pairs) {
    require_same_order(a, b);
    if (a.order() != n) {
      throw DimensionMismatch("batch mixes orders " + std::to_string(n) + " and " +
                              std::to_string(a.order()));
    }
  }
  return n;
}

// Places each completion into its product and checks that every batch
// received each component exactly once.
template <Scalar T>
void collect_products(RunResult<T>& result, std::size_t n, std::size_t batches) {
  result.products.assign(batches, Matrix<T>(n));
  std::vector<std::vector<bool>> filled(batches, std::vector<bool>(n * n, false));
  for (const CompletionEvent<T>& ev : result.completions) {
    const auto [i, j] = ev.component;
    if (ev.batch >= batches || i < 1 || i > n || j < 1 || j > n) {
      throw IntegrityFault("completion for unknown component " + label(ev.component));
    }
    if (filled[ev.batch][(i - 1) * n + (j - 1)]) throw IntegrityFault("component " + label(ev.component) + " completed twice");
    filled[ev.batch][(i - 1) * n + (j - 1)] = true;
    result.products[ev.batch].at(i, j) = ev.value;
  }
  for (std::size_t m = 0; m < batches; ++m) {
    for (bool f : filled[m]) {
      if (!f) throw IntegrityFault("batch " + std::to_string(m) + " finished with missing components");
    }
  }
}

}  // namespace detail

template <Scalar T>
RunResult<T> run_batch(std::span<const std::pair<Matrix<T>, Matrix<T>>> pairs,
                       TraceMode mode = TraceMode::Off, const TraceSink& sink = {},
                       ExitSide exit_side = ExitSide::Left) {
  const std::size_t n = detail::batch_order(pairs);
  CrossWiredMesh<T> mesh(n, exit_side);
  for (const auto& [a, b] : pairs) mesh.enqueue(a, b);

  RunResult<T> result;
  if (mode == TraceMode::Capture) result.trace.emplace();
  BatchMetrics& metrics = result.metrics;
  metrics.batches = pairs.size();
  metrics.order = n;

  while (mesh.busy()) {
    auto events = mesh.step();
    const std::uint64_t t = mesh.time() - 1;
    metrics.utilization.push_back({t, mesh.last_active()});
    metrics.active_cell_steps += mesh.last_active();
    if (mode == TraceMode::Capture || sink) {
      TraceRecord record = mesh.snapshot();
      if (sink) sink(record);
      if (result.trace) result.trace->push_back(std::move(record));
    }
    for (auto& ev : events) result.completions.push_back(std::move(ev));
  }
  result.steps = mesh.time();
  metrics.total_steps = result.steps;
  metrics.padded_input_slots = mesh.padded_input_slots();
  detail::collect_products(result, n, pairs.size());
  return result;
}

template <Scalar T>
RunResult<T> run_batch(const std::vector<std::pair<Matrix<T>, Matrix<T>>>& pairs,
                       TraceMode mode = TraceMode::Off, const TraceSink& sink = {},
                       ExitSide exit_side = ExitSide::Left) {
  return run_batch(std::span<const std::pair<Matrix<T>, Matrix<T>>>(pairs), mode, sink, exit_side);
}

template <Scalar T>
RunResult<T> run_single(const Matrix<T>& a, const Matrix<T>& b, TraceMode mode = TraceMode::Off,
                        const TraceSink& sink = {}, ExitSide exit_side = ExitSide::Left) {
  require_same_order(a, b);
  const std::vector<std::pair<Matrix<T>, Matrix<T>>> pairs{{a, b}};
  return run_batch(pairs, mode, sink, exit_side);
}

// Accumulator grid of a single symbolic run right after the step at t_stop,
// 0 <= t_stop <= 2n-2.
SymbolicMatrix snapshot_symbolic(std::size_t n, std::uint64_t t_stop);

}  // namespace crossmesh
