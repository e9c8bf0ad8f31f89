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

#include "crossmesh/crossmesh.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "crossmesh/analysis.hpp"
#include "crossmesh/crosswired.hpp"
#include "crossmesh/error.hpp"
#include "crossmesh/matrix.hpp"
#include "crossmesh/standard_mesh.hpp"
#include "crossmesh/table_io.hpp"
#include "crossmesh/topology.hpp"

using namespace crossmesh;

struct cm_matrix {
  IntMatrix value;
};

template <Scalar T>
struct RunData {
  std::vector<std::pair<Matrix<T>, Matrix<T>>> inputs;
  RunResult<T> result;
};

struct cm_run {
  cm_engine engine;
  std::variant<RunData<BigInt>, RunData<SymbolicSum>> data;
};

struct cm_tables {
  AssignmentTable assignment;
  ArrivalOrderMatrix arrival;
  SymmetryReport symmetry;
};

struct cm_report {
  bool include_baseline;
  std::vector<BatchMetrics> runs;
};

namespace {

thread_local std::string g_last_error;

template <class F>
cm_status guarded(F&& body) {
  try {
    body();
    return CM_OK;
  } catch (const InvalidArgument& e) {
    g_last_error = e.what();
    return CM_ERR_INVALID_ARGUMENT;
  } catch (const DimensionMismatch& e) {
    g_last_error = e.what();
    return CM_ERR_DIMENSION_MISMATCH;
  } catch (const IntegrityFault& e) {
    g_last_error = e.what();
    return CM_ERR_INTEGRITY;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CM_ERR_OUT_OF_MEMORY;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CM_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return CM_ERR_INTERNAL;
  }
}

template <class P>
P& require(P* p, const char* what) {
  if (p == nullptr) throw InvalidArgument(std::string(what) + " is NULL");
  return *p;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

ExitSide to_exit_side(cm_exit_side side) {
  switch (side) {
    case CM_EXIT_LEFT: return ExitSide::Left;
    case CM_EXIT_RIGHT: return ExitSide::Right;
  }
  throw InvalidArgument("unknown exit side");
}

TraceMode to_trace_mode(cm_trace_mode mode) {
  switch (mode) {
    case CM_TRACE_OFF: return TraceMode::Off;
    case CM_TRACE_CAPTURE: return TraceMode::Capture;
  }
  throw InvalidArgument("unknown trace mode");
}

template <Scalar T>
RunResult<T> run_engine(cm_engine engine, const Matrix<T>& a, const Matrix<T>& b, TraceMode mode,
                        ExitSide side) {
  switch (engine) {
    case CM_ENGINE_CROSSWIRED: return run_single(a, b, mode, {}, side);
    case CM_ENGINE_STANDARD: return run_standard(a, b, mode);
  }
  throw InvalidArgument("unknown engine");
}

template <Scalar T>
void verify_products(const RunData<T>& data, bool& all_match, std::string& diff) {
  all_match = true;
  std::ostringstream out;
  for (std::size_t m = 0; m < data.inputs.size(); ++m) {
    const Matrix<T> expected = matmul_oracle(data.inputs[m].first, data.inputs[m].second);
    const Matrix<T>& got = data.result.products.at(m);
    for (std::size_t i = 1; i <= expected.order(); ++i) {
      for (std::size_t j = 1; j <= expected.order(); ++j) {
        if (!(expected.at(i, j) == got.at(i, j))) {
          all_match = false;
          out << "product " << m << " c" << i << ',' << j << ": expected "
              << to_string(expected.at(i, j)) << ", got " << to_string(got.at(i, j)) << '\n';
        }
      }
    }
  }
  diff = out.str();
}

const BatchMetrics& metrics_of(const cm_run& run) {
  return std::visit([](const auto& d) -> const BatchMetrics& { return d.result.metrics; }, run.data);
}

void require_crosswired(const cm_run& run) {
  if (run.engine != CM_ENGINE_CROSSWIRED) {
    throw InvalidArgument("the batch efficiency model applies to cross-wired runs only");
  }
}

}  // namespace

extern "C" {

const char* cm_version(void) { return "1.0.0"; }

const char* cm_status_name(cm_status status) {
  switch (status) {
    case CM_OK: return "ok";
    case CM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CM_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case CM_ERR_INTEGRITY: return "integrity fault";
    case CM_ERR_OUT_OF_MEMORY: return "out of memory";
    case CM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* cm_last_error(void) { return g_last_error.c_str(); }

void cm_string_free(char* s) { std::free(s); }

cm_status cm_matrix_create(size_t n, cm_matrix** out) {
  return guarded([&] { require(out, "out") = new cm_matrix{IntMatrix(n)}; });
}

cm_status cm_matrix_identity(size_t n, cm_matrix** out) {
  return guarded([&] { require(out, "out") = new cm_matrix{identity_matrix(n)}; });
}

cm_status cm_matrix_random(size_t n, uint64_t seed, cm_matrix** out) {
  return guarded([&] { require(out, "out") = new cm_matrix{random_matrix(n, seed)}; });
}

cm_status cm_matrix_from_i64(size_t n, const int64_t* row_major, cm_matrix** out) {
  return guarded([&] {
    const int64_t* src = &require(row_major, "row_major");
    IntMatrix m(n);
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= n; ++j) m.at(i, j) = static_cast<long long>(src[(i - 1) * n + (j - 1)]);
    }
    require(out, "out") = new cm_matrix{std::move(m)};
  });
}

void cm_matrix_destroy(cm_matrix* m) { delete m; }

cm_status cm_matrix_order(const cm_matrix* m, size_t* out) {
  return guarded([&] { require(out, "out") = require(m, "matrix").value.order(); });
}

cm_status cm_matrix_set_i64(cm_matrix* m, size_t row, size_t col, int64_t value) {
  return guarded([&] { require(m, "matrix").value.at(row, col) = static_cast<long long>(value); });
}

cm_status cm_matrix_set_decimal(cm_matrix* m, size_t row, size_t col, const char* value) {
  return guarded([&] {
    const std::string text(&require(value, "value"));
    const std::size_t digits_from = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
    if (text.size() == digits_from ||
        text.find_first_not_of("0123456789", digits_from) != std::string::npos) {
      throw InvalidArgument("'" + text + "' is not a decimal integer");
    }
    require(m, "matrix").value.at(row, col) = BigInt(text);
  });
}

cm_status cm_matrix_get_decimal(const cm_matrix* m, size_t row, size_t col, char** out) {
  return guarded([&] { require(out, "out") = copy_string(require(m, "matrix").value.at(row, col).str()); });
}

cm_status cm_matrix_to_text(const cm_matrix* m, char** out) {
  return guarded([&] { require(out, "out") = copy_string(render(require(m, "matrix").value)); });
}

cm_status cm_matrix_equal(const cm_matrix* a, const cm_matrix* b, int* out) {
  return guarded([&] { require(out, "out") = require(a, "a").value == require(b, "b").value ? 1 : 0; });
}

cm_status cm_matmul_oracle(const cm_matrix* a, const cm_matrix* b, cm_matrix** out) {
  return guarded([&] {
    IntMatrix c = matmul_oracle(require(a, "a").value, require(b, "b").value);
    require(out, "out") = new cm_matrix{std::move(c)};
  });
}

cm_status cm_run_single(cm_engine engine, const cm_matrix* a, const cm_matrix* b,
                        cm_trace_mode trace, cm_exit_side exit_side, cm_run** out) {
  return guarded([&] {
    cm_run** dest = &require(out, "out");
    RunData<BigInt> data;
    data.inputs.emplace_back(require(a, "a").value, require(b, "b").value);
    data.result = run_engine(engine, data.inputs[0].first, data.inputs[0].second,
                             to_trace_mode(trace), to_exit_side(exit_side));
    *dest = new cm_run{engine, std::move(data)};
  });
}

cm_status cm_run_batch(const cm_matrix* const* a, const cm_matrix* const* b, size_t count,
                       cm_trace_mode trace, cm_exit_side exit_side, cm_run** out) {
  return guarded([&] {
    cm_run** dest = &require(out, "out");
    if (count == 0) throw InvalidArgument("batch must contain at least one matrix pair");
    require(a, "a");
    require(b, "b");
    RunData<BigInt> data;
    data.inputs.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
      data.inputs.emplace_back(require(a[k], "a[k]").value, require(b[k], "b[k]").value);
    }
    data.result = run_batch(data.inputs, to_trace_mode(trace), {}, to_exit_side(exit_side));
    *dest = new cm_run{CM_ENGINE_CROSSWIRED, std::move(data)};
  });
}

cm_status cm_run_symbolic(cm_engine engine, size_t n, cm_trace_mode trace, cm_run** out) {
  return guarded([&] {
    cm_run** dest = &require(out, "out");
    RunData<SymbolicSum> data;
    auto operands = symbolic_operands(n);
    data.inputs.push_back(std::move(operands));
    data.result = run_engine(engine, data.inputs[0].first, data.inputs[0].second,
                             to_trace_mode(trace), ExitSide::Left);
    *dest = new cm_run{engine, std::move(data)};
  });
}

void cm_run_destroy(cm_run* run) { delete run; }

cm_status cm_run_steps(const cm_run* run, uint64_t* out) {
  return guarded([&] { require(out, "out") = metrics_of(require(run, "run")).total_steps; });
}

cm_status cm_run_metrics(const cm_run* run, cm_metrics* out) {
  return guarded([&] {
    const BatchMetrics& m = metrics_of(require(run, "run"));
    require(out, "out") = cm_metrics{m.batches, m.order, m.total_steps, m.active_cell_steps,
                                     m.padded_input_slots};
  });
}

cm_status cm_run_product_count(const cm_run* run, size_t* out) {
  return guarded([&] {
    require(out, "out") =
        std::visit([](const auto& d) { return d.result.products.size(); }, require(run, "run").data);
  });
}

cm_status cm_run_product(const cm_run* run, size_t index, cm_matrix** out) {
  return guarded([&] {
    const auto* data = std::get_if<RunData<BigInt>>(&require(run, "run").data);
    if (data == nullptr) throw InvalidArgument("symbolic runs have no numeric product");
    if (index >= data->result.products.size()) throw InvalidArgument("product index out of range");
    require(out, "out") = new cm_matrix{data->result.products[index]};
  });
}

cm_status cm_run_product_text(const cm_run* run, size_t index, char** out) {
  return guarded([&] {
    char** dest = &require(out, "out");
    std::visit(
        [&](const auto& d) {
          if (index >= d.result.products.size()) throw InvalidArgument("product index out of range");
          *dest = copy_string(render(d.result.products[index]));
        },
        require(run, "run").data);
  });
}

cm_status cm_run_verify(const cm_run* run, int* all_match, char** diff) {
  return guarded([&] {
    int* match_out = &require(all_match, "all_match");
    bool ok = false;
    std::string text;
    std::visit([&](const auto& d) { verify_products(d, ok, text); }, require(run, "run").data);
    if (diff != nullptr) *diff = copy_string(text);
    *match_out = ok ? 1 : 0;
  });
}

cm_status cm_run_trace_jsonl(const cm_run* run, char** out) {
  return guarded([&] {
    char** dest = &require(out, "out");
    std::visit(
        [&](const auto& d) {
          if (!d.result.trace) throw InvalidArgument("run was made without trace capture");
          *dest = copy_string(to_jsonl(*d.result.trace));
        },
        require(run, "run").data);
  });
}

cm_status cm_run_utilization_csv(const cm_run* run, char** out) {
  return guarded([&] { require(out, "out") = copy_string(utilization_csv(metrics_of(require(run, "run")))); });
}

cm_status cm_run_efficiency(const cm_run* run, char** measured, char** formula, int* equal) {
  return guarded([&] {
    const cm_run& r = require(run, "run");
    require_crosswired(r);
    const BatchMetrics& m = metrics_of(r);
    const Rational got = efficiency_measured(m);
    const Rational want = efficiency_formula(m.batches, m.order);
    if (equal != nullptr) *equal = got == want ? 1 : 0;
    if (measured != nullptr) *measured = copy_string(to_string(got));
    if (formula != nullptr) *formula = copy_string(to_string(want));
  });
}

cm_status cm_run_average_steps(const cm_run* run, char** out) {
  return guarded([&] {
    const BatchMetrics& m = metrics_of(require(run, "run"));
    require(out, "out") = copy_string(to_string(Rational(BigInt(m.total_steps), BigInt(m.batches))));
  });
}

cm_status cm_tables_create(size_t n, cm_exit_side exit_side, cm_tables** out) {
  return guarded([&] {
    cm_tables** dest = &require(out, "out");
    AssignmentTable table = assignment_table(n);
    ArrivalOrderMatrix order = arrival_order(table, to_exit_side(exit_side));
    SymmetryReport report = check_symmetries(table);
    *dest = new cm_tables{std::move(table), std::move(order), std::move(report)};
  });
}

void cm_tables_destroy(cm_tables* tables) { delete tables; }

cm_status cm_tables_assignment(const cm_tables* tables, cm_format format, char** out) {
  return guarded([&] {
    const cm_tables& t = require(tables, "tables");
    char** dest = &require(out, "out");
    switch (format) {
      case CM_FORMAT_CSV: *dest = copy_string(assignment_csv(t.assignment)); return;
      case CM_FORMAT_JSON: *dest = copy_string(assignment_json(t.assignment)); return;
      case CM_FORMAT_TEXT: break;
    }
    throw InvalidArgument("assignment table supports csv and json");
  });
}

cm_status cm_tables_arrival(const cm_tables* tables, cm_format format, char** out) {
  return guarded([&] {
    const cm_tables& t = require(tables, "tables");
    char** dest = &require(out, "out");
    switch (format) {
      case CM_FORMAT_CSV: *dest = copy_string(arrival_csv(t.arrival)); return;
      case CM_FORMAT_JSON: *dest = copy_string(arrival_json(t.arrival)); return;
      case CM_FORMAT_TEXT: break;
    }
    throw InvalidArgument("arrival order supports csv and json");
  });
}

cm_status cm_tables_symmetry(const cm_tables* tables, cm_format format, char** out) {
  return guarded([&] {
    const cm_tables& t = require(tables, "tables");
    char** dest = &require(out, "out");
    switch (format) {
      case CM_FORMAT_JSON: *dest = copy_string(symmetry_json(t.symmetry)); return;
      case CM_FORMAT_TEXT: *dest = copy_string(symmetry_text(t.symmetry)); return;
      case CM_FORMAT_CSV: break;
    }
    throw InvalidArgument("symmetry report supports json and text");
  });
}

cm_status cm_tables_symmetry_ok(const cm_tables* tables, int* ok) {
  return guarded([&] { require(ok, "ok") = require(tables, "tables").symmetry.all_ok() ? 1 : 0; });
}

cm_status cm_tables_reference_check(size_t n, int* available, size_t* deviations, char** summary) {
  return guarded([&] {
    if (n == 0) throw InvalidArgument("table order must be at least 1");
    const ReferenceComparison cmp = compare_with_reference(n);
    if (available != nullptr) *available = cmp.available ? 1 : 0;
    if (deviations != nullptr) *deviations = cmp.assignment_deviations.size() + cmp.arrival_deviations.size();
    if (summary != nullptr) *summary = copy_string(cmp.summary());
  });
}

cm_status cm_idle_cells(uint64_t n, char** initial, char** final_) {
  return guarded([&] {
    const IdleCells idle = idle_cells(n);
    if (initial != nullptr) *initial = copy_string(idle.initial.str());
    if (final_ != nullptr) *final_ = copy_string(idle.final.str());
  });
}

cm_status cm_total_cell_steps(uint64_t batches, uint64_t n, char** out) {
  return guarded([&] { require(out, "out") = copy_string(total_cell_steps(batches, n).str()); });
}

cm_status cm_efficiency_formula(uint64_t batches, uint64_t n, char** out) {
  return guarded([&] { require(out, "out") = copy_string(to_string(efficiency_formula(batches, n))); });
}

cm_status cm_average_steps(uint64_t batches, uint64_t n, char** out) {
  return guarded([&] { require(out, "out") = copy_string(to_string(average_steps(batches, n))); });
}

cm_status cm_report_create(int include_baseline, cm_report** out) {
  return guarded([&] { require(out, "out") = new cm_report{include_baseline != 0, {}}; });
}

void cm_report_destroy(cm_report* report) { delete report; }

cm_status cm_report_add_run(cm_report* report, const cm_run* run) {
  return guarded([&] {
    cm_report& rep = require(report, "report");
    const cm_run& r = require(run, "run");
    require_crosswired(r);
    rep.runs.push_back(metrics_of(r));
  });
}

cm_status cm_report_render(const cm_report* report, cm_format format, char** out) {
  return guarded([&] {
    const cm_report& rep = require(report, "report");
    char** dest = &require(out, "out");
    const ComparisonReport cmp = compare_report(rep.runs, rep.include_baseline);
    switch (format) {
      case CM_FORMAT_CSV: *dest = copy_string(cmp.to_csv()); return;
      case CM_FORMAT_JSON: *dest = copy_string(cmp.to_json()); return;
      case CM_FORMAT_TEXT: break;
    }
    throw InvalidArgument("report supports csv and json");
  });
}

cm_status cm_report_all_match(const cm_report* report, int* out) {
  return guarded([&] {
    const cm_report& rep = require(report, "report");
    require(out, "out") = compare_report(rep.runs, rep.include_baseline).all_match() ? 1 : 0;
  });
}

}  // extern "C"
