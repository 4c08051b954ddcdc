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

#include <json.hpp>

#include "mosgroup/covariance.hpp"

namespace mosgroup {

using json = nlohmann::json;

/// Analysis options carried by a problem document; absent fields take these
/// defaults.
struct DocumentOptions {
  double psd_tol = kDefaultPsdTol;
  double rank_tol = kDefaultRankTol;
  int depth_max = kDefaultDepthMax;
  std::vector<double> t_grid;  // defaults to the standard verification grid
  std::uint64_t seed = 42;
  int budget = 200;
};

/// A parsed "mosgroup/1" problem document: a GKS generator, optional unit
/// candidates, and options.  Matrix literals are rectangular arrays of
/// [re, im] pairs.
struct ProblemDocument {
  std::string version;
  Eigen::Index dim = 0;
  Matrix hamiltonian;
  std::vector<Matrix> noise_ops;
  std::optional<Matrix> decay;
  std::string label;
  std::vector<UnitCandidate> unit_candidates;
  DocumentOptions options;
  std::string digest;  // content hash of the canonicalized document

  CPSemigroup semigroup() const;
};

/// Parses and validates a document.  Schema violations raise errc::parse
/// with the offending field path in the message.
ProblemDocument parse_document(const std::string& text);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, const std::string& path);

json complex_to_json(const cxd& z);
json real_vector_to_json(const RealVector& v);

/// FNV-1a 64-bit hash, lowercase hex.
std::string fnv1a_hex(const std::string& text);

}  // namespace mosgroup
