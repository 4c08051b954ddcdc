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

#include <string>
#include <vector>

#include "mosgroup/numkernel.hpp"

namespace mosgroup {

/// A completely positive map P(x) = sum_k v_k x v_k^* on d x d matrices,
/// held as a Kraus family together with its cached Choi matrix
/// C = sum_k vec(v_k) vec(v_k)^*.  Immutable after construction.
class CPMap {
 public:
  /// Builds from a Kraus family.  All members must be d x d.
  static CPMap from_kraus(std::vector<Matrix> kraus);

  /// Builds from a Choi matrix (PSD within psd_tol, relative to its spectral
  /// norm).  The stored Kraus family is the minimal one from the Choi
  /// eigendecomposition, keeping every eigenvalue above the roundoff floor so
  /// the action is reproducible from either representation.
  static CPMap from_choi(Matrix choi, double psd_tol = kDefaultPsdTol);

  static CPMap identity(Eigen::Index dim);
  static CPMap zero(Eigen::Index dim);

  Eigen::Index dim() const { return dim_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  const Matrix& choi() const { return choi_; }

  /// P(x) via the Kraus sum.
  Matrix apply(const Matrix& x) const;

  /// The d^2 x d^2 matrix S with vec(P(x)) = S vec(x).
  Matrix superoperator() const;

  /// The map s * P (s >= 0).
  CPMap scaled(double s) const;

 private:
  CPMap(Eigen::Index dim, std::vector<Matrix> kraus, Matrix choi);

  Eigen::Index dim_;
  std::vector<Matrix> kraus_;
  Matrix choi_;
};

/// Choi matrix <-> superoperator index reshuffle (column-stacking convention):
/// choi(i + d j, k + d l) = superop(k + d i, l + d j).
Matrix choi_from_superop(const Matrix& superop, Eigen::Index dim);
Matrix superop_from_choi(const Matrix& choi, Eigen::Index dim);

/// The elementary conjugation x -> a x a^*.
CPMap omega(const Matrix& a);

/// Certificate for the completely positive order l1 <= l2, decided by
/// positivity of Choi(l2) - Choi(l1).
struct OrderCertificate {
  std::string lhs_label;
  std::string rhs_label;
  double difference_min_eigenvalue = 0.0;
  bool verdict = false;
};

OrderCertificate cp_leq(const CPMap& l1, const CPMap& l2, double tol = kDefaultPsdTol,
                        const std::string& lhs_label = "lhs",
                        const std::string& rhs_label = "rhs");

/// The metric operator space of a CP map: the operators a with
/// a x a^* <= k P(x) for some k, i.e. at finite dimension the unvec of the
/// range of the Choi matrix.  Carries the Hilbert-space inner product induced
/// by the Choi pseudoinverse, an orthonormal basis e_k = sqrt(mu_k)
/// unvec(w_k) from the Choi eigenpairs, and membership testing against the
/// Choi range projection.
///
/// `rank` counts eigenvalues above rank_tol * lambda_max (the reported
/// dimension); the pseudoinverse and range projection retain every direction
/// above the roundoff floor so that small-but-genuine components of members
/// resolve correctly.
class MetricOperatorSpace {
 public:
  MetricOperatorSpace(const CPMap& p, double rank_tol = kDefaultRankTol);

  Eigen::Index dim() const { return dim_; }
  Eigen::Index rank() const { return static_cast<Eigen::Index>(basis_.size()); }
  const std::vector<Matrix>& basis() const { return basis_; }
  const Matrix& choi_pinv() const { return choi_pinv_; }

  struct Membership {
    bool member = false;
    double norm_sq = 0.0;  // meaningful only when member
    double residual = 0.0; // relative out-of-range component
  };

  Membership member(const Matrix& a, double tol = kDefaultPsdTol) const;

  /// <a, b>, sesquilinear, linear in the first argument:
  /// vec(b)^* choi_pinv vec(a).  Throws when either operand fails the
  /// membership test.
  cxd inner(const Matrix& a, const Matrix& b, double member_tol = kDefaultPsdTol) const;

 private:
  Eigen::Index dim_;
  std::vector<Matrix> basis_;
  Matrix choi_pinv_;
  Matrix range_projection_;
};

MetricOperatorSpace metric_operator_space(const CPMap& p, double rank_tol = kDefaultRankTol);

cxd mos_inner(const Matrix& a, const Matrix& b, const MetricOperatorSpace& s);
MetricOperatorSpace::Membership mos_member(const Matrix& a, const MetricOperatorSpace& s,
                                           double tol = kDefaultPsdTol);

/// Composition p1 after p2; the Kraus family is the set of products
/// {u_i v_j} over the two families.
CPMap compose(const CPMap& p1, const CPMap& p2);

/// Gram matrix G[(i,j),(k,l)] = <e_i f_j, e_k f_l> of the products of the
/// minimal bases of p1 and p2, the inner product taken in the space of the
/// composition.  Pair index (i,j) -> i * rank2 + j.  G is the (conjugated)
/// matrix of the comultiplication projection, so it is a Hermitian idempotent
/// whose trace is the rank of the composed space.
Matrix comultiplication_gram(const CPMap& p1, const CPMap& p2,
                             double rank_tol = kDefaultRankTol);

/// The minimal Stinespring isometry V: H -> E tensor H as an (r d) x d
/// matrix whose k-th d x d row block is e_k^*.  Satisfies V^* V = P(1) and
/// V^* (1_r tensor x) V = P(x).
Matrix comultiplication_isometry_map(const CPMap& p, double rank_tol = kDefaultRankTol);

bool is_multiplicative(const CPMap& p, double tol = kDefaultPsdTol);

/// Basis of the intertwining space {T : P(x) T = T x} of a multiplicative
/// map, normalized so that T^* T = 1 per element (the intertwiner inner
/// product <S, T> 1 = T^* S makes each basis element a unit vector).
/// Throws unless p is multiplicative within tol.
std::vector<Matrix> endo_intertwiners(const CPMap& p, double tol = kDefaultPsdTol);

}  // namespace mosgroup
