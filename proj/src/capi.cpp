// Copyright 2026 The mosgroup authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mosgroup.h"

#include <new>
#include <string>

#include "mosgroup/runner.hpp"

struct mosgroup_result {
  mosgroup_status status = MOSGROUP_OK;
  std::string report;
  std::string payload;
  std::string table;
  std::string error;
};

extern "C" {

mosgroup_status mosgroup_run(const char* command, const char* document_json,
                             const char* other_document_json,
                             const mosgroup_overrides* overrides, mosgroup_result** out) {
  if (out == nullptr) return MOSGROUP_ERR_INPUT;
  *out = nullptr;
  auto* result = new (std::nothrow) mosgroup_result;
  if (result == nullptr) return MOSGROUP_ERR_INPUT;

  try {
    mosgroup::RunOverrides opts;
    if (overrides != nullptr) {
      if (overrides->has_t) opts.t = overrides->t;
      if (overrides->has_seed) opts.seed = overrides->seed;
      if (overrides->has_depth) opts.depth = overrides->depth;
    }
    const mosgroup::RunResult run = mosgroup::run_command(
        command ? command : "", document_json ? document_json : "",
        other_document_json ? other_document_json : "", opts);

    result->status = static_cast<mosgroup_status>(static_cast<int>(run.status));
    result->report = run.report.dump(2) + "\n";
    result->payload = run.report.contains("results") ? run.report["results"].dump() : "";
    result->table = run.table;
    result->error = run.error_message;
  } catch (const std::exception& e) {
    result->status = MOSGROUP_ERR_INPUT;
    result->error = e.what();
  }
  *out = result;
  return result->status;
}

const char* mosgroup_result_report(const mosgroup_result* result) {
  return result ? result->report.c_str() : "";
}

const char* mosgroup_result_payload(const mosgroup_result* result) {
  return result ? result->payload.c_str() : "";
}

const char* mosgroup_result_table(const mosgroup_result* result) {
  return result ? result->table.c_str() : "";
}

const char* mosgroup_result_error(const mosgroup_result* result) {
  return result ? result->error.c_str() : "";
}

mosgroup_status mosgroup_result_status(const mosgroup_result* result) {
  return result ? result->status : MOSGROUP_ERR_INPUT;
}

void mosgroup_result_free(mosgroup_result* result) {
  delete result;
}

const char* mosgroup_version(void) {
  return "mosgroup 1.0.0";
}

}  // extern "C"
