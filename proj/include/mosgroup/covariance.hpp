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

#include "mosgroup/units.hpp"

namespace mosgroup {

inline constexpr int kDefaultDepthMax = 14;
inline constexpr double kDefaultRefineTol = 1e-9;

/// Finite partition 0 = t_0 < t_1 < ... < t_n = t_max of [0, t_max].
struct Partition {
  double t_max = 0.0;
  std::vector<double> points;  // includes both endpoints

  static Partition from_points(std::vector<double> points);
  static Partition dyadic(double t_max, int depth);  // 2^depth equal intervals

  std::vector<double> increments() const;
};

/// Product of increment inner products over a partition:
///   f(S, T; partition) = prod_k <S_{d_k}, T_{d_k}>,  d_k = t_k - t_{k-1}.
/// For units normalized to <T_d, T_d> <= 1 the modulus is at most 1.
cxd partition_product(const UnitCandidate& s, const UnitCandidate& u, const CPSemigroup& p,
                      const Partition& part, MosCache* cache = nullptr);

/// The 2 x 2 matrix A[i][j] = f(T_i, T_j; partition) for the pair (s, u),
/// normalized internally so every increment inner product has modulus <= 1.
/// Hermitian PSD.
Matrix covariance_matrix(const UnitCandidate& s, const UnitCandidate& u, const CPSemigroup& p,
                         const Partition& part, MosCache* cache = nullptr);

/// Refinement limit of the partition net for a family of verified units.
///
/// The net is evaluated over dyadic partitions with 2^m intervals; the raw
/// matrices A_m (monotone nondecreasing in PSD order) are kept for
/// diagnostics, and the reported limit is the Richardson extrapolation of
/// the sequence, stopped when successive estimates differ by less than tol
/// in Frobenius norm.  Units are normalized internally with the least
/// exponent kappa making <T_d, T_d> <= 1 on every increment used; the
/// de-normalized exponents add the shifts back exactly.
struct FamilyRefinement {
  double t = 0.0;
  int refinement_depth = 0;   // dyadic exponent at which the estimate stabilized
  double residual = 0.0;      // last extrapolated increment, Frobenius
  bool converged = false;
  std::vector<double> kappa;  // normalization exponent per unit
  Matrix limit;               // n x n extrapolated limit of the normalized net
  std::vector<Matrix> net;    // raw normalized A_m, m = 0..depth reached
  Matrix exponents;           // Log(limit)/t, principal branch, diagonal real
  Matrix covariance;          // exponents + (kappa_i + kappa_j)/2
};

FamilyRefinement family_refine(const std::vector<UnitCandidate>& units, const CPSemigroup& p,
                               double t, int depth_max = kDefaultDepthMax,
                               double tol = kDefaultRefineTol, MosCache* cache = nullptr,
                               bool branch_guard = false,
                               const std::vector<double>& extra_kappa_deltas = {});

/// Pairwise form of the refinement limit.  B is the normalized 2 x 2 limit
/// with B_{ij} = e^{t exponents_{ij}}; `covariance` carries the
/// de-normalized exponents.  Non-convergence at depth_max is reported via
/// the flag and residual, never silently accepted.  A consistency rerun at
/// t/2 guards the principal logarithm branch.
struct CovarianceResult {
  double t = 0.0;
  Matrix B;           // 2 x 2 normalized limit, PSD, |entries| <= 1
  Matrix exponents;   // 2 x 2 with B_{ij} = e^{t c_{ij}}, diagonal real
  Matrix covariance;  // de-normalized exponents
  std::vector<double> kappa;
  int refinement_depth = 0;
  double residual = 0.0;
  bool converged = false;
};

CovarianceResult refine_to_limit(const UnitCandidate& s, const UnitCandidate& u,
                                 const CPSemigroup& p, double t,
                                 int depth_max = kDefaultDepthMax,
                                 double tol = kDefaultRefineTol, MosCache* cache = nullptr);

/// The covariance function c_P(S, T): the de-normalized off-diagonal
/// exponent of the refinement limit at t = 1, cross-checked at t = 0.5.
cxd covariance(const UnitCandidate& s, const UnitCandidate& u, const CPSemigroup& p,
               int depth_max = kDefaultDepthMax, double tol = kDefaultRefineTol,
               MosCache* cache = nullptr);

/// Independent small-time derivative estimate of the covariance:
/// Richardson-extrapolated finite difference of t -> <S_t, T_t> at
/// t in {1e-2, 5e-3, 2.5e-3}.  A cross-check, never the definition.
cxd generator_covariance_oracle(const UnitCandidate& s, const UnitCandidate& u,
                                const CPSemigroup& p, MosCache* cache = nullptr);

/// Checks |b(t) - <S_t, T_t>|^2 <= (1 - <S_t, S_t>)(1 - <T_t, T_t>) for the
/// normalized pair, both for the refinement limit b(t) and for the finite
/// partition product over `part`.
struct DeviationBoundCheck {
  double lhs = 0.0;            // limit form
  double partition_lhs = 0.0;  // finite-partition form
  double rhs = 0.0;
  bool holds = false;
};

DeviationBoundCheck check_deviation_bound(const UnitCandidate& s, const UnitCandidate& u,
                                          const CPSemigroup& p, double t, const Partition& part,
                                          int depth_max = kDefaultDepthMax,
                                          double tol = kDefaultRefineTol,
                                          MosCache* cache = nullptr);

/// Checks that |<S_t, T_t> - 1| for the normalized pair decreases to below
/// 1e-3 along t = 2^-m, m = 4..10.
struct SmallTimeLimitCheck {
  std::vector<double> deviations;  // |<S_t,T_t> - 1| per grid point, t decreasing
  bool holds = false;
};

SmallTimeLimitCheck check_small_time_limit(const UnitCandidate& s, const UnitCandidate& u,
                                           const CPSemigroup& p, MosCache* cache = nullptr);

/// Cofinality probe: the raw (de-normalized) product over the partition
/// {0, split, t} refined dyadically on each side, Richardson-extrapolated in
/// the refinement depth.  Converges to the same limit as the dyadic chain.
Matrix split_refined_product(const UnitCandidate& s, const UnitCandidate& u,
                             const CPSemigroup& p, double t, double split,
                             int depth_max = kDefaultDepthMax,
                             double tol = kDefaultRefineTol, MosCache* cache = nullptr);

}  // namespace mosgroup
