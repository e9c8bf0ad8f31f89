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
#include <string>
#include <vector>

#include "crossmesh/error.hpp"
#include "crossmesh/matrix.hpp"
#include "crossmesh/run_result.hpp"
#include "crossmesh/trace.hpp"

namespace crossmesh {

// Conventional skewed systolic mesh. Row i receives a_{ik} from the west and
// column j receives b_{kj} from the north, each delayed so that both reach
// cell (i,j) at t = (i-1) + (j-1) + (k-1). a-values shift east and b-values
// shift south every step; cell (i,j) owns c_ij.
template <Scalar T>
class StandardMesh {
 public:
  struct Cell {
    std::optional<T> west_in;
    std::optional<T> north_in;
    T acc{};
    std::size_t term_count = 0;
  };

  StandardMesh(Matrix<T> a, Matrix<T> b)
      : n_(a.order()), a_(std::move(a)), b_(std::move(b)), cells_(n_ * n_) {
    require_same_order(a_, b_);
  }

  std::size_t order() const { return n_; }
  std::uint64_t time() const { return t_; }
  std::size_t last_active() const { return last_active_; }
  std::uint64_t padded_input_slots() const { return padded_slots_; }
  const Cell& cell(std::size_t i, std::size_t j) const { return cells_.at(idx(i, j)); }

  bool busy() const {
    if (t_ <= last_injection_t()) return true;
    for (const Cell& cell : cells_) {
      if (cell.west_in || cell.north_in) return true;
    }
    return false;
  }

  std::vector<CompletionEvent<T>> step() {
    inject();
    std::vector<CompletionEvent<T>> events;
    std::size_t active = 0;
    for (std::size_t i = 1; i <= n_; ++i) {
      for (std::size_t j = 1; j <= n_; ++j) {
        Cell& cell = cells_[idx(i, j)];
        if (cell.west_in.has_value() != cell.north_in.has_value()) {
          throw IntegrityFault("standard mesh cell (" + std::to_string(i) + "," +
                               std::to_string(j) + ") at t=" + std::to_string(t_) +
                               " holds a single operand");
        }
        if (!cell.west_in) continue;
        cell.acc += (*cell.west_in) * (*cell.north_in);
        ++active;
        if (++cell.term_count == n_) {
          CompletionEvent<T> ev;
          ev.row = i;
          ev.col = j;
          ev.component = Component{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
          ev.value = cell.acc;
          ev.complete_t = t_;
          ev.exit_rank = static_cast<std::uint64_t>((i - 1) * n_ + j);
          events.push_back(std::move(ev));
        }
      }
    }
    last_active_ = active;
    shift();
    ++t_;
    return events;
  }

  TraceRecord snapshot() const {
    TraceRecord record;
    record.t = t_ == 0 ? 0 : t_ - 1;
    record.active = last_active_;
    record.cells.reserve(cells_.size());
    for (std::size_t i = 1; i <= n_; ++i) {
      for (std::size_t j = 1; j <= n_; ++j) {
        const Cell& cell = cells_[idx(i, j)];
        record.cells.push_back({i, j, cell.term_count, to_string(cell.acc)});
      }
    }
    return record;
  }

 private:
  std::size_t idx(std::size_t i, std::size_t j) const { return (i - 1) * n_ + (j - 1); }

  // Lane `lane` carries its n operands during steps lane-1 .. lane+n-2.
  std::uint64_t last_injection_t() const { return 2 * n_ - 2; }

  void inject() {
    for (std::size_t lane = 1; lane <= n_; ++lane) {
      const bool in_window = t_ + 1 >= lane && t_ + 1 - lane < n_;
      if (in_window) {
        const std::size_t k = t_ + 2 - lane;
        cells_[idx(lane, 1)].west_in = a_.at(lane, k);
        cells_[idx(1, lane)].north_in = b_.at(k, lane);
      } else if (t_ <= last_injection_t()) {
        // A zero the skewed schedule has to pad in, on each edge.
        padded_slots_ += 2;
      }
    }
  }

  void shift() {
    for (std::size_t i = 1; i <= n_; ++i) {
      for (std::size_t j = n_; j >= 1; --j) {
        Cell& cell = cells_[idx(i, j)];
        if (j < n_) cells_[idx(i, j + 1)].west_in = std::move(cell.west_in);
        cell.west_in.reset();
      }
    }
    for (std::size_t j = 1; j <= n_; ++j) {
      for (std::size_t i = n_; i >= 1; --i) {
        Cell& cell = cells_[idx(i, j)];
        if (i < n_) cells_[idx(i + 1, j)].north_in = std::move(cell.north_in);
        cell.north_in.reset();
      }
    }
  }

  std::size_t n_;
  Matrix<T> a_;
  Matrix<T> b_;
  std::vector<Cell> cells_;
  std::uint64_t t_ = 0;
  std::size_t last_active_ = 0;
  std::uint64_t padded_slots_ = 0;
};

// Product of a and b on the standard mesh; takes 3n-2 steps.
template <Scalar T>
RunResult<T> run_standard(const Matrix<T>& a, const Matrix<T>& b, TraceMode mode = TraceMode::Off,
                          const TraceSink& sink = {}) {
  StandardMesh<T> mesh(a, b);
  const std::size_t n = mesh.order();
  RunResult<T> result;
  if (mode == TraceMode::Capture) result.trace.emplace();
  result.metrics.batches = 1;
  result.metrics.order = n;

  while (mesh.busy()) {
    auto events = mesh.step();
    result.metrics.utilization.push_back({mesh.time() - 1, mesh.last_active()});
    result.metrics.active_cell_steps += mesh.last_active();
    if (mode == TraceMode::Capture || sink) {
      TraceRecord record = mesh.snapshot();
      if (sink) sink(record);
      if (result.trace) result.trace->push_back(std::move(record));
    }
    for (auto& ev : events) result.completions.push_back(std::move(ev));
  }
  result.steps = mesh.time();
  result.metrics.total_steps = result.steps;
  result.metrics.padded_input_slots = mesh.padded_input_slots();

  Matrix<T> product(n);
  std::size_t completed = 0;
  for (const CompletionEvent<T>& ev : result.completions) {
    product.at(ev.component.i, ev.component.j) = ev.value;
    ++completed;
  }
  if (completed != n * n) {
    throw IntegrityFault("standard mesh finished with " + std::to_string(completed) + " of " +
                         std::to_string(n * n) + " components");
  }
  result.products.push_back(std::move(product));
  return result;
}

}  // namespace crossmesh
