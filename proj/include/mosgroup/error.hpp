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

#include <stdexcept>
#include <string>

namespace mosgroup {

enum class errc {
  invalid_argument,    // malformed value, dimension mismatch, bad precondition
  not_hermitian,       // Hermitian input required beyond tolerance
  not_psd,             // positive semidefinite input required
  not_member,          // operand outside the metric operator space
  not_multiplicative,  // endomorphism-only operation on a non-multiplicative map
  growth_cap,          // unit growth exceeds the supported exponent bracket
  dimension_guard,     // desk-scale dimension limit exceeded
  non_convergence,     // refinement did not converge within the depth budget
  degenerate,          // quantity undefined (e.g. vanishing net limit)
  inconsistency,       // internal cross-check failed; indicates bad input or a bug
  parse,               // unreadable or schema-violating document
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace mosgroup
