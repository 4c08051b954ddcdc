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

#include "mosgroup/covariance.hpp"

namespace mosgroup {

/// The covariance kernel restricted to a finite verified family and the
/// dimension of the Hilbert space it induces on zero-sum weight functions.
/// The reported index is a lower bound: no finite search exhausts the units.
struct IndexReport {
  std::vector<std::string> units_used;
  Matrix c_matrix;           // n x n covariance kernel
  Matrix gram;               // (n-1) x (n-1) form on the zero-sum basis
  RealVector eigenvalues;    // gram eigenvalues, descending
  int index_lower_bound = 0;
  double cpd_margin = 0.0;   // most negative gram eigenvalue
  bool no_units = false;
  int base_index = 0;        // unit whose delta is subtracted in the zero-sum basis
};

/// Entry (i, j) = c_P(U_i, U_j); Hermitian within tolerance.
Matrix covariance_kernel(const std::vector<UnitCandidate>& units, const CPSemigroup& p,
                         int depth_max = kDefaultDepthMax, double tol = kDefaultRefineTol,
                         MosCache* cache = nullptr);

/// Gram of the zero-sum basis f_i = delta_{U_i} - delta_{U_base}:
/// gram_{ij} = c_{ij} - c_{i,base} - c_{base,j} + c_{base,base}.  The index
/// lower bound counts eigenvalues above rank_tol * lambda_max; the kernel
/// must be conditionally positive definite (margin >= -1e-7), otherwise a
/// non-unit slipped through verification.
IndexReport index_lower_bound(const std::vector<UnitCandidate>& units, const CPSemigroup& p,
                              double rank_tol = kDefaultRankTol,
                              int depth_max = kDefaultDepthMax,
                              double refine_tol = kDefaultRefineTol,
                              MosCache* cache = nullptr, int base_index = -1);

/// Same report from a precomputed kernel.
IndexReport index_report_from_kernel(const Matrix& kernel, std::vector<std::string> labels,
                                     double rank_tol = kDefaultRankTol, int base_index = -1);

/// Tensor additivity at desk scale: product units (S (x) T)_t with generator
/// b_S (x) 1 + 1 (x) b_T are verified against the tensor semigroup, the
/// kernel identity c_{P(x)Q}(S (x) T, S' (x) T') = c_P(S, S') + c_Q(T, T')
/// is checked within 1e-4, and the product-family index bound is compared
/// with the sum of the component bounds.
struct AdditivityReport {
  int lhs = 0;                     // product-family bound on P (x) Q
  int rhs = 0;                     // bound_p + bound_q
  bool product_kernel_ok = false;  // kernel additivity within 1e-4
  double max_kernel_deviation = 0.0;
  int bound_p = 0;
  int bound_q = 0;
  std::vector<std::string> product_labels;
  std::vector<std::string> failed_product_units;  // verification failures, reported
};

AdditivityReport additivity_check(const CPSemigroup& p, const CPSemigroup& q,
                                  const std::vector<UnitCandidate>& units_p,
                                  const std::vector<UnitCandidate>& units_q,
                                  double rank_tol = kDefaultRankTol,
                                  int depth_max = kDefaultDepthMax,
                                  double refine_tol = kDefaultRefineTol);

/// Finite-dimensional sanity check for semigroups that are already
/// multiplicative (automorphism semigroups), where the dilation is the
/// semigroup itself: (i) the intertwiner-space inner product <S, T> 1 = T^* S
/// agrees with the metric-operator-space inner product, (ii) increment inner
/// products are exactly exponential, so every partition product equals the
/// refined limit, (iii) the index computed from the partition limit and from
/// direct single-step inner products agree exactly.
struct DilationCheckReport {
  bool multiplicative = false;
  double intertwiner_gram_deviation = 0.0;  // max entrywise gap between the two Grams
  double gram_spectrum_deviation = 0.0;     // max gap between sorted Gram spectra
  double partition_independence = 0.0;      // max |single product - refined limit|
  double covariance_identity = 0.0;         // max |<u1(t),u2(t)> - e^{t c}|
  int index_partition_route = 0;
  int index_direct_route = 0;
  bool passed = false;
};

DilationCheckReport trivial_dilation_check(const CPSemigroup& p,
                                           const std::vector<UnitCandidate>& units,
                                           double tol = kDefaultPsdTol,
                                           double rank_tol = kDefaultRankTol,
                                           int depth_max = kDefaultDepthMax,
                                           double refine_tol = kDefaultRefineTol);

}  // namespace mosgroup
