/* Copyright 2026 The mosgroup authors
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

/* C interface of the mosgroup shared library.
 *
 * Commands take a problem document (JSON text, format "mosgroup/1") and
 * produce a report: a JSON object {command, inputs_digest, results,
 * diagnostics, timings} plus an aligned text table.  Results payloads are
 * deterministic: the same document and seed give byte-identical results on
 * one platform.
 */

#ifndef MOSGROUP_H
#define MOSGROUP_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mosgroup_status {
  MOSGROUP_OK = 0,
  /* A verification, convergence, or consistency check failed; the report
   * still describes the outcome. */
  MOSGROUP_ERR_VERIFICATION = 1,
  /* The document (or command line) is malformed; the error message carries
   * the offending field path. */
  MOSGROUP_ERR_INPUT = 2,
} mosgroup_status;

/* Opaque result handle; owns every string it returns. */
typedef struct mosgroup_result mosgroup_result;

/* Optional overrides for a run; zero-initialize and set the has_* flags. */
typedef struct mosgroup_overrides {
  int has_t;
  double t;
  int has_seed;
  unsigned long long seed;
  int has_depth;
  int depth;
} mosgroup_overrides;

/* Runs one command.  `command` is one of: mos, verify-unit, discover-units,
 * covariance, index, tensor-index, dilation-check, selftest.
 * `document_json` may be NULL for selftest; `other_document_json` is
 * required for tensor-index and ignored otherwise; `overrides` may be NULL.
 * Always produces a result handle (unless allocation fails, returning
 * MOSGROUP_ERR_INPUT with *out = NULL); inspect the status for the outcome.
 */
mosgroup_status mosgroup_run(const char* command, const char* document_json,
                             const char* other_document_json,
                             const mosgroup_overrides* overrides, mosgroup_result** out);

/* The full report as JSON text (2-space indent, trailing newline). */
const char* mosgroup_result_report(const mosgroup_result* result);

/* The results payload alone, canonically serialized (the determinism
 * surface). */
const char* mosgroup_result_payload(const mosgroup_result* result);

/* Aligned text table rendering of the results. */
const char* mosgroup_result_table(const mosgroup_result* result);

/* Empty string when the run succeeded. */
const char* mosgroup_result_error(const mosgroup_result* result);

mosgroup_status mosgroup_result_status(const mosgroup_result* result);

void mosgroup_result_free(mosgroup_result* result);

const char* mosgroup_version(void);

#ifdef __cplusplus
}
#endif

#endif /* MOSGROUP_H */
