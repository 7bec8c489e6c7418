// Copyright 2026 The solgcf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/* C interface to solgcf. Every function returning solgcf_status leaves a
 * description of the failure in solgcf_last_error() (per thread). Handles are
 * opaque and released with the matching _destroy function. */

#ifndef SOLGCF_H
#define SOLGCF_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum solgcf_status {
  SOLGCF_OK = 0,
  SOLGCF_ERR_INVALID_ARGUMENT = 1,
  SOLGCF_ERR_DOMAIN = 2,
  SOLGCF_ERR_RANGE = 3,
  SOLGCF_ERR_SINGULAR = 4,
  SOLGCF_ERR_IO = 5,
  SOLGCF_ERR_NUMERICAL = 6,
  SOLGCF_ERR_INTERNAL = 7
} solgcf_status;

const char* solgcf_version(void);
const char* solgcf_last_error(void);
const char* solgcf_status_name(solgcf_status s);
/* Releases strings returned through char** out-parameters. */
void solgcf_string_free(char* s);

/* ---- generating curves of F1-invariant solitons ---- */

typedef struct solgcf_trace solgcf_trace;

typedef struct solgcf_trace_options {
  double abs_tol;
  double rel_tol;
  double span;            /* arc length integrated in each direction */
  int samples_per_branch; /* resampled rows per branch */
} solgcf_trace_options;

void solgcf_trace_options_default(solgcf_trace_options* opt);

/* spec: "F1,F2,extrinsic" and similar; F3-invariant specs are rejected
 * (their curves are classified, not traced). */
solgcf_status solgcf_trace_create(const char* spec, double y0, double z0, double theta0,
                                  const solgcf_trace_options* opt, solgcf_trace** out);
void solgcf_trace_destroy(solgcf_trace* t);

/* Rows are ordered by s: s, y, z, theta, k_ext, k_int, residual. */
size_t solgcf_trace_row_count(const solgcf_trace* t);
solgcf_status solgcf_trace_row(const solgcf_trace* t, size_t i, double row[7]);

enum { SOLGCF_BACKWARD = 0, SOLGCF_FORWARD = 1 };
/* "reached_s_max", "event:<name>", "step_failure" or "range_error". */
const char* solgcf_trace_termination(const solgcf_trace* t, int branch);
double solgcf_trace_s_end(const solgcf_trace* t, int branch);
/* SOLGCF_OK unless a branch stopped on a numerical failure (step failure,
 * range error, or the |z| guard). */
solgcf_status solgcf_trace_status(const solgcf_trace* t);

/* The CSV gets a "# terminated:" footer when the status is not OK. */
solgcf_status solgcf_trace_write_csv(const solgcf_trace* t, const char* path);
solgcf_status solgcf_trace_write_svg(const solgcf_trace* t, const char* path);

/* ---- phase portraits ---- */

typedef struct solgcf_portrait solgcf_portrait;

typedef struct solgcf_portrait_options {
  double x_min, x_max, y_min, y_max;
  int nx, ny;
  double span;
  double abs_tol;
  double rel_tol;
} solgcf_portrait_options;

/* Default box and grid for "fase1", "fase3" or "fase5". */
solgcf_status solgcf_portrait_options_default(const char* system, solgcf_portrait_options* opt);
solgcf_status solgcf_portrait_create(const char* system, const solgcf_portrait_options* opt,
                                     solgcf_portrait** out);
void solgcf_portrait_destroy(solgcf_portrait* p);

typedef struct solgcf_equilibrium {
  double x, y;
  double jacobian[4]; /* row major */
  double eig_re[2], eig_im[2];
  const char* classification; /* "saddle", "degenerate", "node", "focus", "center" */
  double residual;
} solgcf_equilibrium;

size_t solgcf_portrait_equilibrium_count(const solgcf_portrait* p);
solgcf_status solgcf_portrait_equilibrium(const solgcf_portrait* p, size_t i, solgcf_equilibrium* out);
size_t solgcf_portrait_trajectory_count(const solgcf_portrait* p);
solgcf_status solgcf_portrait_write_svg(const solgcf_portrait* p, const char* path);
solgcf_status solgcf_portrait_write_equilibria_csv(const solgcf_portrait* p, const char* path);

/* ---- verification suite ---- */

typedef struct solgcf_report solgcf_report;

solgcf_status solgcf_report_run(int parallel, solgcf_report** out);
void solgcf_report_destroy(solgcf_report* r);
size_t solgcf_report_check_count(const solgcf_report* r);
/* name is owned by the report. */
solgcf_status solgcf_report_check(const solgcf_report* r, size_t i, const char** name, int* pass,
                                  double* max_error);
int solgcf_report_all_pass(const solgcf_report* r);
/* {"version", "checks": {name: {"pass", "max_error"}}}; owned by the report. */
const char* solgcf_report_json(const solgcf_report* r);

/* ---- existence classification ---- */

/* JSON verdict for a spec: linear-angle cells for F1-invariant specs, the
 * plane analysis for F3-invariant ones. Free with solgcf_string_free. */
solgcf_status solgcf_classify(const char* spec, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* SOLGCF_H */
