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

#include <optional>
#include <string>
#include <vector>

#include "mosgroup/cpmaps.hpp"

namespace mosgroup {

inline constexpr Eigen::Index kMaxDim = 8;     // desk-scale guard (superoperators 64 x 64)
inline constexpr double kMaxEvolveTime = 100;  // overflow guard for exp(t L)

/// Bounded generator in GKS/Lindblad form acting on observables:
///   L(x) = i [h, x] + sum_k (v_k^* x v_k - 1/2 {v_k^* v_k, x}) - 1/2 {r, x},
/// with h Hermitian and r PSD.  Without a decay term r the generator is
/// conservative, L(1) = 0, and the semigroup e^{tL} is unital.
struct GKSGenerator {
  Eigen::Index dim = 0;
  Matrix hamiltonian;
  std::vector<Matrix> noise_ops;
  std::optional<Matrix> decay;  // PSD; makes the semigroup contractive instead of unital

  /// Validates shapes, Hermiticity of h, positivity of the decay term.
  void validate() const;

  /// The d^2 x d^2 superoperator of L.
  Matrix superoperator() const;
};

/// A CP semigroup P_t = e^{tL} from a bounded GKS-form generator.
/// Immutable; evolve is pure and thread-safe.
class CPSemigroup {
 public:
  explicit CPSemigroup(GKSGenerator generator, std::string label = "");

  Eigen::Index dim() const { return generator_.dim; }
  const GKSGenerator& generator() const { return generator_; }
  const Matrix& superoperator() const { return superop_; }
  const std::string& label() const { return label_; }
  bool conservative() const { return !generator_.decay.has_value(); }

  /// P_t as a CPMap, reconstructed from the Choi matrix of exp(t L).
  /// Requires 0 <= t <= 100; a Choi positivity failure flags an invalid
  /// generator.
  CPMap evolve(double t) const;

 private:
  GKSGenerator generator_;
  Matrix superop_;
  std::string label_;
};

/// True iff ||P_t(1) - 1||_F <= tol for every grid time.
bool is_unital(const CPSemigroup& p, const std::vector<double>& t_grid,
               double tol = kDefaultPsdTol);

/// The product semigroup with (P (x) Q)_t (x (x) y) = P_t(x) (x) Q_t(y),
/// assembled at the generator level: h = h_P (x) 1 + 1 (x) h_Q, noise
/// {v_k (x) 1} and {1 (x) w_m}.  Combined dimension above 8 is rejected.
CPSemigroup tensor(const CPSemigroup& p, const CPSemigroup& q);

}  // namespace mosgroup
