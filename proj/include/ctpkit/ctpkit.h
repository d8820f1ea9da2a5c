/* Copyright 2026 ctpkit developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the ctpkit shared library.
 *
 * Conventions:
 *   - every fallible call returns ctpk_status; CTPK_OK is 0;
 *   - on failure, ctpk_last_error() returns a thread-local message that is
 *     valid until the next failing call on the same thread;
 *   - objects returned through ctpk_*ating out-parameters are owned by the
 *     caller and released with the matching *_free;
 *   - char* out-parameters are NUL-terminated buffers released with
 *     ctpk_string_free;
 *   - const char* returns are borrowed and live as long as their owner.
 */

#ifndef CTPKIT_CTPKIT_H
#define CTPKIT_CTPKIT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ctpk_status {
  CTPK_OK = 0,
  CTPK_ERR_INVALID_ARGUMENT = 1, /* null pointers, bad parameter values */
  CTPK_ERR_PARSE = 2,            /* malformed input file or buffer */
  CTPK_ERR_IO = 3,               /* unreadable or unwritable path */
  CTPK_ERR_DOMAIN = 4            /* violated precondition or invariant */
} ctpk_status;

typedef struct ctpk_log ctpk_log;             /* one episode */
typedef struct ctpk_logset ctpk_logset;       /* ordered episodes of one study */
typedef struct ctpk_scenario ctpk_scenario;   /* simulator configuration */
typedef struct ctpk_assurance ctpk_assurance; /* checklist report */

const char* ctpk_version(void);
const char* ctpk_last_error(void);
void ctpk_string_free(char* s);

/* --- episode logs ------------------------------------------------------- */

ctpk_status ctpk_log_read_file(const char* path, ctpk_log** out);
ctpk_status ctpk_log_parse(const char* bytes, size_t len, ctpk_log** out);
/* Canonical file bytes (write_log identity form). */
ctpk_status ctpk_log_render(const ctpk_log* log, char** out);
ctpk_status ctpk_log_write_file(const ctpk_log* log, const char* path);
/* Newline-separated invariant violations; empty string when valid. */
ctpk_status ctpk_log_validate(const ctpk_log* log, char** out);
const char* ctpk_log_episode_id(const ctpk_log* log);
size_t ctpk_log_record_count(const ctpk_log* log);
void ctpk_log_free(ctpk_log* log);

/* --- metrics ------------------------------------------------------------ */

typedef struct ctpk_gain {
  size_t n;
  double loss_human;
  double loss_ai;
  double loss_team;
  int ctp; /* 0 or 1 */
  double gross_gain;
  double total_cost;
  double lambda;
  double net_gain;
  int efficiency;  /* 1 efficient, 0 inefficient, -1 undefined (zero cost) */
  int degenerate;  /* 0 none, 1 perfect AI, 2 perfect human, 3 both */
} ctpk_gain;

ctpk_status ctpk_log_evaluate(const ctpk_log* log, double lambda, ctpk_gain* out);

typedef struct ctpk_interval {
  double point;
  double lower;
  double upper;
  double level;
  uint64_t resamples;
  uint64_t seed;
} ctpk_interval;

ctpk_status ctpk_log_bootstrap(const ctpk_log* log, double lambda, uint64_t resamples,
                               double level, uint64_t seed, ctpk_interval* out);

/* Windowed stability over one episode: consecutive windows of `window`
 * records. Series arrays may be NULL; `capacity` is their length and
 * *out_windows receives the window count (query it with NULL arrays and
 * capacity 0 first). */
ctpk_status ctpk_log_stability(const ctpk_log* log, size_t window, double lambda,
                               double* out_stability, int* ctp_series, double* gain_series,
                               size_t capacity, size_t* out_windows);

/* Cross-episode stability: one window per episode, in logset order. */
ctpk_status ctpk_logset_stability(const ctpk_logset* set, double lambda, double* out_stability,
                                  int* ctp_series, double* gain_series, size_t capacity,
                                  size_t* out_windows);

/* The complete machine document for one evaluation: gain report plus the
 * optional windowed stability (window > 0) and bootstrap blocks. */
ctpk_status ctpk_log_evaluate_render(const ctpk_log* log, double lambda, size_t window,
                                     int with_bootstrap, uint64_t resamples, double level,
                                     uint64_t seed, char** out_json);

/* --- studies (episode directories with a manifest) ---------------------- */

ctpk_status ctpk_logset_read_dir(const char* dir, ctpk_logset** out);
ctpk_status ctpk_logset_write_dir(const ctpk_logset* set, const char* dir);
size_t ctpk_logset_count(const ctpk_logset* set);
/* Borrowed; valid while the set lives. Index must be < count. */
const ctpk_log* ctpk_logset_at(const ctpk_logset* set, size_t index);
void ctpk_logset_free(ctpk_logset* set);

/* --- simulation --------------------------------------------------------- */

ctpk_status ctpk_scenario_read_file(const char* path, ctpk_scenario** out);
ctpk_status ctpk_scenario_parse(const char* bytes, size_t len, ctpk_scenario** out);
double ctpk_scenario_lambda(const ctpk_scenario* scenario);
const char* ctpk_scenario_id(const ctpk_scenario* scenario);
void ctpk_scenario_free(ctpk_scenario* scenario);

ctpk_status ctpk_simulate(const ctpk_scenario* scenario, ctpk_logset** out);

/* Tab-separated sweep table bytes for `values` applied to `axis`. */
ctpk_status ctpk_sweep_render(const ctpk_scenario* scenario, const char* axis,
                              const double* values, size_t count, char** out);

/* --- assurance reports --------------------------------------------------- */

/* narrative is the content of a narrative key-value file ("item-id = text"
 * lines, with lambda-justification as an extra key) or NULL for none;
 * created_at NULL uses the fixed epoch stamp. */
ctpk_status ctpk_assurance_build(const ctpk_logset* set, double lambda, const char* narrative,
                                 const char* created_at, ctpk_assurance** out);
ctpk_status ctpk_assurance_parse(const char* bytes, size_t len, ctpk_assurance** out);
/* style 0 = machine JSON (lossless round-trip), 1 = human text. */
ctpk_status ctpk_assurance_render(const ctpk_assurance* report, int style, char** out);
/* Newline-separated deficiency descriptions; empty string when complete. */
ctpk_status ctpk_assurance_validate(const ctpk_assurance* report, char** out);
size_t ctpk_assurance_missing_items(const ctpk_assurance* report);
void ctpk_assurance_free(ctpk_assurance* report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CTPKIT_CTPKIT_H */
