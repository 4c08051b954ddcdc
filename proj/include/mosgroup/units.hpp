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

#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "mosgroup/semigroups.hpp"

namespace mosgroup {

/// An operator semigroup T_t = e^{tb}, candidate unit of a CP semigroup:
/// a unit satisfies T_t x T_t^* <= e^{kt} P_t(x) for some real k, or
/// equivalently T_t lies in the metric operator space of P_t with
/// <T_t, T_t> <= e^{kt}.
struct UnitCandidate {
  Eigen::Index dim = 0;
  Matrix b;
  std::optional<double> k;  // growth exponent, set once verified
  std::string label;

  static UnitCandidate make(Matrix b, std::string label = "");

  /// e^{t b}; requires t >= 0.
  Matrix value(double t) const;

  /// The rescaled semigroup e^{-ct/2} T_t, i.e. generator b - (c/2) 1.
  UnitCandidate shifted(double c) const;
};

struct UnitVerification {
  bool verified = false;
  std::optional<double> minimal_k;
  std::vector<double> grid;
  double worst_margin = 0.0;  // most negative scaled Choi eigenvalue at k = minimal_k + 1e-6
  std::string reason;         // empty when verified
};

/// Shared cache of metric operator spaces of evolve(t), keyed by the exact
/// time bits.  Thread-safe; values are immutable once inserted.
class MosCache {
 public:
  explicit MosCache(const CPSemigroup& p, double rank_tol = kDefaultRankTol);
  const MetricOperatorSpace& at(double t);
  const CPSemigroup& semigroup() const { return p_; }

 private:
  const CPSemigroup& p_;
  double rank_tol_;
  std::mutex mutex_;
  std::map<std::uint64_t, std::shared_ptr<const MetricOperatorSpace>> spaces_;
};

/// Default verification grid {2^-m : m = 0..10} plus 2.0.
std::vector<double> default_unit_grid();

inline constexpr double kGrowthBracket = 50.0;   // bisection range for the growth exponent
inline constexpr double kGrowthBisectTol = 1e-6;

/// Verifies the unit property on a finite grid: membership of T_t in the
/// metric operator space of P_t at every grid time, and a finite growth
/// exponent found by bisection of the scale-invariant criterion
/// <T_t, T_t>^{1/t} <= e^k over [-50, 50].
UnitVerification verify_unit(const UnitCandidate& u, const CPSemigroup& p,
                             const std::vector<double>& t_grid,
                             double tol = kDefaultPsdTol, MosCache* cache = nullptr);

/// <S_t, T_t> in the metric operator space of P_t.
cxd unit_inner(const UnitCandidate& s, const UnitCandidate& u, const CPSemigroup& p,
               double t, MosCache* cache = nullptr);

/// max over the given increments of log <T_d, T_d> / d: the least uniform
/// exponent normalizing <T_d, T_d> <= 1 on that set.
double normalizing_exponent(const UnitCandidate& u, const CPSemigroup& p,
                            const std::vector<double>& deltas, MosCache* cache = nullptr);

struct Discovery {
  std::vector<UnitCandidate> units;  // verified, deduplicated, sorted by label
  std::vector<UnitVerification> verifications;
  int candidates_tried = 0;
};

/// Deterministic seeded search over generators
///   b = mu 1 + nu (i h) + sum_k lambda_k v_k^* + sum_k lambda'_k v_k
/// (structured grid plus random samples, at most `budget` candidates);
/// verification filters.  An empty result is a valid outcome.
Discovery discover_units(const CPSemigroup& p, int budget = 200, std::uint64_t seed = 42);

}  // namespace mosgroup
