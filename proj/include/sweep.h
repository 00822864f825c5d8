/*
 Copyright 2026 The sweep authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

/* C interface of the sweep shared library.
 *
 * All entry points return a sweep_status; on failure sweep_last_error()
 * yields a message for the calling thread. Handles are opaque and must be
 * released with the matching *_free function.
 *
 * The command runners (simulate / optimize / verify / sweep) succeed
 * mechanically even when embedded threshold checks fail; inspect
 * sweep_result_passed to distinguish a clean run from a failed verification
 * (conventionally exit code 3 for command-line front ends).
 */

#ifndef SWEEP_H
#define SWEEP_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sweep_status {
  SWEEP_OK = 0,
  SWEEP_ERROR_VALIDATION = 1, /* malformed or inconsistent input */
  SWEEP_ERROR_NUMERICAL = 2,  /* computation left its validity domain */
  SWEEP_ERROR_VERIFICATION = 3, /* reserved for front-end exit mapping */
  SWEEP_ERROR_INVALID_ARGUMENT = 4,
  SWEEP_ERROR_INTERNAL = 5
} sweep_status;

typedef struct sweep_scenario sweep_scenario;
typedef struct sweep_result sweep_result;

#define SWEEP_POINTING_DEFAULT (-1)
#define SWEEP_POINTING_SIGMA_ONLY 0
#define SWEEP_POINTING_FULL 1

typedef struct sweep_options {
  double epsilon;             /* <= 0: scenario default */
  const double* eps_schedule; /* NULL: scenario default */
  size_t eps_schedule_len;
  int control_intervals;   /* <= 0: scenario default */
  int steps_per_interval;  /* <= 0: derived from epsilon */
  int pointing_mode;       /* SWEEP_POINTING_* */
} sweep_options;

const char* sweep_version(void);

/* Message describing the most recent failure on this thread. */
const char* sweep_last_error(void);

void sweep_options_init(sweep_options* options);

sweep_status sweep_scenario_parse(const char* json_text, sweep_scenario** out);
sweep_status sweep_scenario_load(const char* path, sweep_scenario** out);
sweep_status sweep_scenario_emit(const sweep_scenario* scenario, char** json_out);
void sweep_scenario_free(sweep_scenario* scenario);
void sweep_string_free(char* text);

sweep_status sweep_run_simulate(const sweep_scenario* scenario,
                                const sweep_options* options,
                                sweep_result** out);
sweep_status sweep_run_optimize(const sweep_scenario* scenario,
                                const sweep_options* options,
                                sweep_result** out);
sweep_status sweep_run_verify(const sweep_scenario* scenario,
                              const sweep_options* options,
                              sweep_result** out);
sweep_status sweep_run_sweep(const sweep_scenario* scenario,
                             const sweep_options* options,
                             sweep_result** out);

/* Named artifacts (CSV / JSON text) produced by a run. */
size_t sweep_result_artifact_count(const sweep_result* result);
const char* sweep_result_artifact_name(const sweep_result* result, size_t i);
const char* sweep_result_artifact_data(const sweep_result* result, size_t i);
size_t sweep_result_artifact_size(const sweep_result* result, size_t i);

/* Human-readable run summary (PASS/FAIL lines). */
const char* sweep_result_summary(const sweep_result* result);

/* 1 when every embedded threshold check passed. */
int sweep_result_passed(const sweep_result* result);

void sweep_result_free(sweep_result* result);

#ifdef __cplusplus
}
#endif

#endif
