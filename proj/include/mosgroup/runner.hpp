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

#pragma once

#include "mosgroup/document.hpp"

namespace mosgroup {

/// Exit-code contract: 0 success, 1 verification/convergence failure,
/// 2 malformed or invalid input.
enum class RunStatus : int {
  ok = 0,
  verification_failure = 1,
  malformed_input = 2,
};

struct RunOverrides {
  std::optional<double> t;
  std::optional<std::uint64_t> seed;
  std::optional<int> depth;
};

struct RunResult {
  RunStatus status = RunStatus::ok;
  json report;                // {command, inputs_digest, results, diagnostics, timings}
  std::string table;          // aligned text rendering of the results
  std::string error_message;  // nonempty when the run failed outright
};

/// Dispatches one CLI command.  `other_document_json` is required for
/// tensor-index; `document_json` may be empty for selftest.  Never throws:
/// failures are mapped onto the status and error message.
RunResult run_command(const std::string& command, const std::string& document_json,
                      const std::string& other_document_json = "",
                      const RunOverrides& overrides = {});

/// The built-in invariant suite behind the selftest command.
json run_selftest(int* failures);

}  // namespace mosgroup
