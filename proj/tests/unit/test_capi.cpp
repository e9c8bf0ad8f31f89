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

#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "crossmesh/crossmesh.h"
#include "doctest.h"
#include "json.hpp"

namespace {

struct StringDeleter {
  void operator()(char* s) const { cm_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

std::string take(char* s) { return OwnedString(s).get(); }

struct MatrixDeleter {
  void operator()(cm_matrix* m) const { cm_matrix_destroy(m); }
};
using Matrix = std::unique_ptr<cm_matrix, MatrixDeleter>;

struct RunDeleter {
  void operator()(cm_run* r) const { cm_run_destroy(r); }
};
using Run = std::unique_ptr<cm_run, RunDeleter>;

Matrix random(size_t n, uint64_t seed) {
  cm_matrix* m = nullptr;
  REQUIRE(cm_matrix_random(n, seed, &m) == CM_OK);
  return Matrix(m);
}

}  // namespace

TEST_CASE("status names and errors") {
  CHECK(std::string(cm_status_name(CM_OK)) == "ok");
  cm_matrix* m = nullptr;
  CHECK(cm_matrix_create(0, &m) == CM_ERR_INVALID_ARGUMENT);
  CHECK(m == nullptr);
  CHECK(std::string(cm_last_error()).find("at least 1") != std::string::npos);
  CHECK(cm_matrix_create(2, nullptr) == CM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("matrix round trip through decimal strings") {
  cm_matrix* raw = nullptr;
  REQUIRE(cm_matrix_create(2, &raw) == CM_OK);
  Matrix m(raw);
  CHECK(cm_matrix_set_decimal(m.get(), 1, 2, "-123456789012345678901234567890") == CM_OK);
  char* text = nullptr;
  REQUIRE(cm_matrix_get_decimal(m.get(), 1, 2, &text) == CM_OK);
  CHECK(take(text) == "-123456789012345678901234567890");
  CHECK(cm_matrix_set_decimal(m.get(), 1, 1, "12a") == CM_ERR_INVALID_ARGUMENT);
  CHECK(cm_matrix_set_i64(m.get(), 3, 1, 5) == CM_ERR_INVALID_ARGUMENT);
  size_t n = 0;
  CHECK(cm_matrix_order(m.get(), &n) == CM_OK);
  CHECK(n == 2);
}

TEST_CASE("single runs on both engines") {
  const int64_t a_vals[] = {1, 2, 3, 4};
  const int64_t b_vals[] = {5, 6, 7, 8};
  cm_matrix* a_raw = nullptr;
  cm_matrix* b_raw = nullptr;
  REQUIRE(cm_matrix_from_i64(2, a_vals, &a_raw) == CM_OK);
  REQUIRE(cm_matrix_from_i64(2, b_vals, &b_raw) == CM_OK);
  Matrix a(a_raw);
  Matrix b(b_raw);

  cm_run* raw = nullptr;
  REQUIRE(cm_run_single(CM_ENGINE_CROSSWIRED, a.get(), b.get(), CM_TRACE_OFF, CM_EXIT_LEFT, &raw) == CM_OK);
  Run crossed(raw);
  uint64_t steps = 0;
  CHECK(cm_run_steps(crossed.get(), &steps) == CM_OK);
  CHECK(steps == 3);
  char* product = nullptr;
  REQUIRE(cm_run_product_text(crossed.get(), 0, &product) == CM_OK);
  CHECK(take(product) == "19 22\n43 50\n");
  int match = 0;
  char* diff = nullptr;
  REQUIRE(cm_run_verify(crossed.get(), &match, &diff) == CM_OK);
  CHECK(match == 1);
  CHECK(take(diff).empty());

  REQUIRE(cm_run_single(CM_ENGINE_STANDARD, a.get(), b.get(), CM_TRACE_OFF, CM_EXIT_LEFT, &raw) == CM_OK);
  Run standard(raw);
  CHECK(cm_run_steps(standard.get(), &steps) == CM_OK);
  CHECK(steps == 4);
  char* eff = nullptr;
  CHECK(cm_run_efficiency(standard.get(), &eff, nullptr, nullptr) == CM_ERR_INVALID_ARGUMENT);

  cm_matrix* numeric = nullptr;
  REQUIRE(cm_run_product(standard.get(), 0, &numeric) == CM_OK);
  Matrix owned(numeric);
  cm_matrix* oracle = nullptr;
  REQUIRE(cm_matmul_oracle(a.get(), b.get(), &oracle) == CM_OK);
  Matrix owned_oracle(oracle);
  int equal = 0;
  CHECK(cm_matrix_equal(owned.get(), owned_oracle.get(), &equal) == CM_OK);
  CHECK(equal == 1);
}

TEST_CASE("dimension mismatch maps to its status") {
  Matrix a = random(2, 1);
  Matrix b = random(3, 1);
  cm_run* raw = nullptr;
  CHECK(cm_run_single(CM_ENGINE_CROSSWIRED, a.get(), b.get(), CM_TRACE_OFF, CM_EXIT_LEFT, &raw) ==
        CM_ERR_DIMENSION_MISMATCH);
  const cm_matrix* as[] = {a.get(), b.get()};
  const cm_matrix* bs[] = {a.get(), b.get()};
  CHECK(cm_run_batch(as, bs, 2, CM_TRACE_OFF, CM_EXIT_LEFT, &raw) == CM_ERR_DIMENSION_MISMATCH);
  CHECK(cm_run_batch(as, bs, 0, CM_TRACE_OFF, CM_EXIT_LEFT, &raw) == CM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("batch run efficiency and report") {
  std::vector<Matrix> as;
  std::vector<Matrix> bs;
  std::vector<const cm_matrix*> a_ptrs;
  std::vector<const cm_matrix*> b_ptrs;
  for (uint64_t k = 0; k < 3; ++k) {
    as.push_back(random(4, k));
    bs.push_back(random(4, 100 + k));
    a_ptrs.push_back(as.back().get());
    b_ptrs.push_back(bs.back().get());
  }
  cm_run* raw = nullptr;
  REQUIRE(cm_run_batch(a_ptrs.data(), b_ptrs.data(), 3, CM_TRACE_CAPTURE, CM_EXIT_LEFT, &raw) == CM_OK);
  Run run(raw);

  cm_metrics metrics{};
  REQUIRE(cm_run_metrics(run.get(), &metrics) == CM_OK);
  CHECK(metrics.total_steps == 15);
  CHECK(metrics.active_cell_steps == 192);
  CHECK(metrics.batches == 3);

  char* measured = nullptr;
  char* formula = nullptr;
  int equal = 0;
  REQUIRE(cm_run_efficiency(run.get(), &measured, &formula, &equal) == CM_OK);
  CHECK(take(measured) == "4/5");
  CHECK(take(formula) == "4/5");
  CHECK(equal == 1);

  char* trace = nullptr;
  REQUIRE(cm_run_trace_jsonl(run.get(), &trace) == CM_OK);
  const std::string lines = take(trace);
  size_t count = 0;
  for (char ch : lines) count += ch == '\n';
  CHECK(count == 15);
  const auto first = nlohmann::json::parse(lines.substr(0, lines.find('\n')));
  CHECK(first["t"] == 0);
  CHECK(first["active"] == 4);
  CHECK(first["cells"].size() == 16);

  cm_report* report = nullptr;
  REQUIRE(cm_report_create(1, &report) == CM_OK);
  CHECK(cm_report_add_run(report, run.get()) == CM_OK);
  char* csv = nullptr;
  REQUIRE(cm_report_render(report, CM_FORMAT_CSV, &csv) == CM_OK);
  CHECK(take(csv).find("\n4,3,15,10,192,240,4,5,5,1\n") != std::string::npos);
  int all = 0;
  CHECK(cm_report_all_match(report, &all) == CM_OK);
  CHECK(all == 1);
  cm_report_destroy(report);
}

TEST_CASE("symbolic run through the C API") {
  cm_run* raw = nullptr;
  REQUIRE(cm_run_symbolic(CM_ENGINE_CROSSWIRED, 2, CM_TRACE_CAPTURE, &raw) == CM_OK);
  Run run(raw);
  char* text = nullptr;
  REQUIRE(cm_run_product_text(run.get(), 0, &text) == CM_OK);
  CHECK(take(text).rfind("a11·b11 + a12·b21 | ", 0) == 0);
  int match = 0;
  CHECK(cm_run_verify(run.get(), &match, nullptr) == CM_OK);
  CHECK(match == 1);
  cm_matrix* m = nullptr;
  CHECK(cm_run_product(run.get(), 0, &m) == CM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("tables through the C API") {
  cm_tables* tables = nullptr;
  REQUIRE(cm_tables_create(4, CM_EXIT_LEFT, &tables) == CM_OK);
  char* out = nullptr;
  REQUIRE(cm_tables_assignment(tables, CM_FORMAT_CSV, &out) == CM_OK);
  CHECK(take(out) == "1 1,2 2,3 3,4 4\n1 2,3 1,2 4,4 3\n3 2,1 4,4 1,2 3\n3 4,4 2,1 3,2 1\n");
  REQUIRE(cm_tables_arrival(tables, CM_FORMAT_JSON, &out) == CM_OK);
  CHECK(take(out) == "[[1,5,15,10],[16,2,12,7],[6,9,3,13],[11,14,8,4]]");
  int ok = 0;
  CHECK(cm_tables_symmetry_ok(tables, &ok) == CM_OK);
  CHECK(ok == 1);
  CHECK(cm_tables_symmetry(tables, CM_FORMAT_CSV, &out) == CM_ERR_INVALID_ARGUMENT);
  cm_tables_destroy(tables);

  int available = 0;
  size_t deviations = 0;
  char* summary = nullptr;
  REQUIRE(cm_tables_reference_check(7, &available, &deviations, &summary) == CM_OK);
  CHECK(available == 1);
  CHECK(deviations == 1);
  CHECK(take(summary) == "match except (2,7): paper=76 derived=67");
}

TEST_CASE("closed forms through the C API") {
  char* s = nullptr;
  REQUIRE(cm_efficiency_formula(100, 10, &s) == CM_OK);
  CHECK(take(s) == "1000/1009");
  REQUIRE(cm_average_steps(1000, 8, &s) == CM_OK);
  CHECK(take(s) == "8007/1000");
  REQUIRE(cm_total_cell_steps(10, 7, &s) == CM_OK);
  CHECK(take(s) == "3724");
  char* init = nullptr;
  char* fin = nullptr;
  REQUIRE(cm_idle_cells(7, &init, &fin) == CM_OK);
  CHECK(take(init) == "147");
  CHECK(take(fin) == "147");
  CHECK(cm_efficiency_formula(0, 4, &s) == CM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("independent handles run on separate threads") {
  std::vector<uint64_t> steps(6, 0);
  std::vector<std::thread> workers;
  for (size_t k = 0; k < steps.size(); ++k) {
    workers.emplace_back([k, &steps] {
      cm_matrix* a = nullptr;
      cm_matrix* b = nullptr;
      cm_run* run = nullptr;
      if (cm_matrix_random(k + 2, k, &a) != CM_OK || cm_matrix_random(k + 2, k + 1, &b) != CM_OK) return;
      if (cm_run_single(CM_ENGINE_CROSSWIRED, a, b, CM_TRACE_OFF, CM_EXIT_LEFT, &run) == CM_OK) {
        cm_run_steps(run, &steps[k]);
        cm_run_destroy(run);
      }
      cm_matrix_destroy(a);
      cm_matrix_destroy(b);
    });
  }
  for (auto& w : workers) w.join();
  for (size_t k = 0; k < steps.size(); ++k) CHECK(steps[k] == 2 * (k + 2) - 1);
}
