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

/* Compiled as C to keep the public header C-clean. */
#include <stdio.h>
#include <string.h>

#include "crossmesh/crossmesh.h"

int main(void) {
  cm_matrix* a = NULL;
  cm_matrix* b = NULL;
  cm_run* run = NULL;
  uint64_t steps = 0;
  int match = 0;
  char* eff = NULL;
  int failures = 0;

  if (cm_matrix_random(4, 1, &a) != CM_OK || cm_matrix_random(4, 2, &b) != CM_OK) {
    fprintf(stderr, "matrix creation failed: %s\n", cm_last_error());
    return 1;
  }
  if (cm_run_single(CM_ENGINE_CROSSWIRED, a, b, CM_TRACE_OFF, CM_EXIT_LEFT, &run) != CM_OK) {
    fprintf(stderr, "run failed: %s\n", cm_last_error());
    return 1;
  }
  cm_run_steps(run, &steps);
  cm_run_verify(run, &match, NULL);
  cm_run_efficiency(run, &eff, NULL, NULL);
  if (steps != 7) failures++;
  if (match != 1) failures++;
  if (eff == NULL || strcmp(eff, "4/7") != 0) failures++;
  printf("steps=%llu match=%d efficiency=%s\n", (unsigned long long)steps, match, eff ? eff : "?");

  cm_string_free(eff);
  cm_run_destroy(run);
  cm_matrix_destroy(a);
  cm_matrix_destroy(b);
  return failures == 0 ? 0 : 1;
}
