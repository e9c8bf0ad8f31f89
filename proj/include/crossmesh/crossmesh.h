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

/*
 * C interface to the crossmesh simulator.
 *
 * Every object is an opaque handle created by a cm_*_create / cm_run_* call
 * and released with the matching cm_*_destroy. Every fallible function
 * returns a cm_status; on failure cm_last_error() holds a message for the
 * calling thread until its next failing call. Strings handed out through a
 * char** are heap copies owned by the caller and released with
 * cm_string_free. Indices are 1-based throughout.
 *
 * Distinct handles may be used from different threads concurrently; a single
 * handle must not be.
 */
#ifndef CROSSMESH_CROSSMESH_H_
#define CROSSMESH_CROSSMESH_H_

#include <stddef.h>
#include <stdint.h>

#if defined(CROSSMESH_BUILDING_LIBRARY)
#define CROSSMESH_API __attribute__((visibility("default")))
#else
#define CROSSMESH_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cm_status {
  CM_OK = 0,
  CM_ERR_INVALID_ARGUMENT = 1,
  CM_ERR_DIMENSION_MISMATCH = 2,
  CM_ERR_INTEGRITY = 3,
  CM_ERR_OUT_OF_MEMORY = 4,
  CM_ERR_INTERNAL = 5
} cm_status;

typedef enum cm_engine { CM_ENGINE_CROSSWIRED = 0, CM_ENGINE_STANDARD = 1 } cm_engine;
typedef enum cm_exit_side { CM_EXIT_LEFT = 0, CM_EXIT_RIGHT = 1 } cm_exit_side;
typedef enum cm_trace_mode { CM_TRACE_OFF = 0, CM_TRACE_CAPTURE = 1 } cm_trace_mode;
typedef enum cm_format { CM_FORMAT_CSV = 0, CM_FORMAT_JSON = 1, CM_FORMAT_TEXT = 2 } cm_format;

typedef struct cm_matrix cm_matrix;
typedef struct cm_run cm_run;
typedef struct cm_tables cm_tables;
typedef struct cm_report cm_report;

typedef struct cm_metrics {
  uint64_t batches;
  uint64_t order;
  uint64_t total_steps;
  uint64_t active_cell_steps;
  uint64_t padded_input_slots;
} cm_metrics;

CROSSMESH_API const char* cm_version(void);
CROSSMESH_API const char* cm_status_name(cm_status status);
CROSSMESH_API const char* cm_last_error(void);
CROSSMESH_API void cm_string_free(char* s);

/* Exact-integer matrices. */
CROSSMESH_API cm_status cm_matrix_create(size_t n, cm_matrix** out);
CROSSMESH_API cm_status cm_matrix_identity(size_t n, cm_matrix** out);
/* Entries uniform in [-99, 99], reproducible from the seed. */
CROSSMESH_API cm_status cm_matrix_random(size_t n, uint64_t seed, cm_matrix** out);
CROSSMESH_API cm_status cm_matrix_from_i64(size_t n, const int64_t* row_major, cm_matrix** out);
CROSSMESH_API void cm_matrix_destroy(cm_matrix* m);
CROSSMESH_API cm_status cm_matrix_order(const cm_matrix* m, size_t* out);
CROSSMESH_API cm_status cm_matrix_set_i64(cm_matrix* m, size_t row, size_t col, int64_t value);
CROSSMESH_API cm_status cm_matrix_set_decimal(cm_matrix* m, size_t row, size_t col, const char* value);
CROSSMESH_API cm_status cm_matrix_get_decimal(const cm_matrix* m, size_t row, size_t col, char** out);
CROSSMESH_API cm_status cm_matrix_to_text(const cm_matrix* m, char** out);
CROSSMESH_API cm_status cm_matrix_equal(const cm_matrix* a, const cm_matrix* b, int* out);
CROSSMESH_API cm_status cm_matmul_oracle(const cm_matrix* a, const cm_matrix* b, cm_matrix** out);

/* Simulation runs. A run keeps its operands so it can check itself
 * against the triple-loop oracle. */
CROSSMESH_API cm_status cm_run_single(cm_engine engine, const cm_matrix* a, const cm_matrix* b,
                                      cm_trace_mode trace, cm_exit_side exit_side, cm_run** out);
/* Pipelined batch on the cross-wired engine; a[k] times b[k] for k < count. */
CROSSMESH_API cm_status cm_run_batch(const cm_matrix* const* a, const cm_matrix* const* b,
                                     size_t count, cm_trace_mode trace, cm_exit_side exit_side,
                                     cm_run** out);
/* Single product of symbolic operands a_ik, b_kj of order n. */
CROSSMESH_API cm_status cm_run_symbolic(cm_engine engine, size_t n, cm_trace_mode trace,
                                        cm_run** out);
CROSSMESH_API void cm_run_destroy(cm_run* run);

CROSSMESH_API cm_status cm_run_steps(const cm_run* run, uint64_t* out);
CROSSMESH_API cm_status cm_run_metrics(const cm_run* run, cm_metrics* out);
CROSSMESH_API cm_status cm_run_product_count(const cm_run* run, size_t* out);
/* Numeric runs only. */
CROSSMESH_API cm_status cm_run_product(const cm_run* run, size_t index, cm_matrix** out);
CROSSMESH_API cm_status cm_run_product_text(const cm_run* run, size_t index, char** out);
/* *all_match is 1 when every product equals the oracle; otherwise *diff
 * (when non-NULL) lists the differing entries. */
CROSSMESH_API cm_status cm_run_verify(const cm_run* run, int* all_match, char** diff);
/* Requires CM_TRACE_CAPTURE. One JSON object per line. */
CROSSMESH_API cm_status cm_run_trace_jsonl(const cm_run* run, char** out);
CROSSMESH_API cm_status cm_run_utilization_csv(const cm_run* run, char** out);
/* Rationals as "num/den". *equal is 1 when measured == formula. */
CROSSMESH_API cm_status cm_run_efficiency(const cm_run* run, char** measured, char** formula,
                                          int* equal);
CROSSMESH_API cm_status cm_run_average_steps(const cm_run* run, char** out);

/* Assignment table, arrival order and symmetry report for order n. */
CROSSMESH_API cm_status cm_tables_create(size_t n, cm_exit_side exit_side, cm_tables** out);
CROSSMESH_API void cm_tables_destroy(cm_tables* tables);
CROSSMESH_API cm_status cm_tables_assignment(const cm_tables* tables, cm_format format, char** out);
CROSSMESH_API cm_status cm_tables_arrival(const cm_tables* tables, cm_format format, char** out);
CROSSMESH_API cm_status cm_tables_symmetry(const cm_tables* tables, cm_format format, char** out);
CROSSMESH_API cm_status cm_tables_symmetry_ok(const cm_tables* tables, int* ok);
/* Compares the generated tables of order n with the bundled reference
 * tables (n = 4, 7). *available is 0 for other orders. */
CROSSMESH_API cm_status cm_tables_reference_check(size_t n, int* available, size_t* deviations,
                                                  char** summary);

/* Closed-form model; results as decimal integers or "num/den". */
CROSSMESH_API cm_status cm_idle_cells(uint64_t n, char** initial, char** final_);
CROSSMESH_API cm_status cm_total_cell_steps(uint64_t batches, uint64_t n, char** out);
CROSSMESH_API cm_status cm_efficiency_formula(uint64_t batches, uint64_t n, char** out);
CROSSMESH_API cm_status cm_average_steps(uint64_t batches, uint64_t n, char** out);

/* Comparison report over cross-wired runs, rows in insertion order. */
CROSSMESH_API cm_status cm_report_create(int include_baseline, cm_report** out);
CROSSMESH_API void cm_report_destroy(cm_report* report);
CROSSMESH_API cm_status cm_report_add_run(cm_report* report, const cm_run* run);
CROSSMESH_API cm_status cm_report_render(const cm_report* report, cm_format format, char** out);
CROSSMESH_API cm_status cm_report_all_match(const cm_report* report, int* out);

#ifdef __cplusplus
}
#endif

#endif /* CROSSMESH_CROSSMESH_H_ */
