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

#include "mosgroup/index.hpp"

#include <algorithm>
#include <cmath>

namespace mosgroup {

namespace {

constexpr double kCpdTolerance = 1e-7;
constexpr double kKernelHermitianTol = 1e-8;
constexpr double kAdditivityTol = 1e-4;

void require_hermitian_kernel(const Matrix& kernel) {
  const double defect = (kernel - kernel.adjoint()).cwiseAbs().maxCoeff();
  if (defect > kKernelHermitianTol) {
    throw error(errc::inconsistency, "covariance kernel is not Hermitian within tolerance");
  }
}

}  // namespace

Matrix covariance_kernel(const std::vector<UnitCandidate>& units, const CPSemigroup& p,
                         int depth_max, double tol, MosCache* cache) {
  if (units.empty()) {
    throw error(errc::invalid_argument, "covariance_kernel: empty unit family");
  }
  const FamilyRefinement fam =
      family_refine(units, p, 1.0, depth_max, tol, cache, /*branch_guard=*/true);
  if (!fam.converged) {
    throw error(errc::non_convergence,
                "covariance_kernel: refinement did not converge (residual " +
                    std::to_string(fam.residual) + "); kernel rejected");
  }
  require_hermitian_kernel(fam.covariance);
  return 0.5 * (fam.covariance + fam.covariance.adjoint());
}

IndexReport index_report_from_kernel(const Matrix& kernel, std::vector<std::string> labels,
                                     double rank_tol, int base_index) {
  const Eigen::Index n = kernel.rows();
  if (kernel.cols() != n || static_cast<Eigen::Index>(labels.size()) != n || n < 1) {
    throw error(errc::invalid_argument, "index_report_from_kernel: shape mismatch");
  }
  require_hermitian_kernel(kernel);
  const Matrix c = 0.5 * (kernel + kernel.adjoint());
  const Eigen::Index base = base_index < 0 ? n - 1 : base_index;
  if (base < 0 || base >= n) {
    throw error(errc::invalid_argument, "index_report_from_kernel: base index out of range");
  }

  IndexReport out;
  out.units_used = std::move(labels);
  out.c_matrix = c;
  out.base_index = static_cast<int>(base);

  // Zero-sum basis f_i = delta_i - delta_base, i != base.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < n; ++i)
    if (i != base) keep.push_back(i);
  const auto m = static_cast<Eigen::Index>(keep.size());
  Matrix gram(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) {
      const Eigen::Index i = keep[a];
      const Eigen::Index j = keep[b];
      gram(a, b) = c(i, j) - c(i, base) - c(base, j) + c(base, base);
    }
  gram = 0.5 * (gram + gram.adjoint()).eval();
  out.gram = gram;

  if (m == 0) {
    out.eigenvalues = RealVector(0);
    return out;
  }
  const HermitianEig eig = hermitian_eig(gram);
  out.eigenvalues = eig.eigenvalues;
  out.cpd_margin = eig.eigenvalues.minCoeff();
  if (out.cpd_margin < -kCpdTolerance) {
    throw error(errc::inconsistency,
                "index: kernel fails conditional positive definiteness (margin " +
                    std::to_string(out.cpd_margin) + "); a non-unit slipped through verification");
  }
  const double lambda_max = eig.eigenvalues(0);
  const double scale = std::max({1.0, lambda_max, c.cwiseAbs().maxCoeff()});
  const double threshold = std::max(rank_tol * std::max(lambda_max, 0.0), 1e-10 * scale);
  for (Eigen::Index k = 0; k < m; ++k) {
    if (eig.eigenvalues(k) > threshold) ++out.index_lower_bound;
  }
  return out;
}

IndexReport index_lower_bound(const std::vector<UnitCandidate>& units, const CPSemigroup& p,
                              double rank_tol, int depth_max, double refine_tol, MosCache* cache,
                              int base_index) {
  if (units.empty()) {
    IndexReport out;
    out.no_units = true;
    return out;
  }
  std::vector<std::string> labels;
  for (const auto& u : units) labels.push_back(u.label);
  const Matrix kernel = covariance_kernel(units, p, depth_max, refine_tol, cache);
  return index_report_from_kernel(kernel, std::move(labels), rank_tol, base_index);
}

AdditivityReport additivity_check(const CPSemigroup& p, const CPSemigroup& q,
                                  const std::vector<UnitCandidate>& units_p,
                                  const std::vector<UnitCandidate>& units_q, double rank_tol,
                                  int depth_max, double refine_tol) {
  if (units_p.empty() || units_q.empty()) {
    throw error(errc::invalid_argument, "additivity_check: both families must be nonempty");
  }
  const CPSemigroup pq = tensor(p, q);
  const Matrix idp = Matrix::Identity(p.dim(), p.dim());
  const Matrix idq = Matrix::Identity(q.dim(), q.dim());

  AdditivityReport out;
  std::vector<UnitCandidate> product_units;
  std::vector<std::pair<std::size_t, std::size_t>> pair_of;
  MosCache pq_cache(pq);
  const std::vector<double> grid = default_unit_grid();
  for (std::size_t i = 0; i < units_p.size(); ++i) {
    for (std::size_t j = 0; j < units_q.size(); ++j) {
      const Matrix b = kron(units_p[i].b, idq) + kron(idp, units_q[j].b);
      const std::string label = units_p[i].label + "(x)" + units_q[j].label;
      UnitCandidate pu = UnitCandidate::make(b, label);
      const UnitVerification v = verify_unit(pu, pq, grid, kDefaultPsdTol, &pq_cache);
      if (!v.verified) {
        out.failed_product_units.push_back(label + ": " + v.reason);
        continue;
      }
      pu.k = v.minimal_k;
      product_units.push_back(std::move(pu));
      pair_of.emplace_back(i, j);
    }
  }
  if (product_units.empty()) {
    throw error(errc::inconsistency, "additivity_check: no product unit verified");
  }
  for (const auto& u : product_units) out.product_labels.push_back(u.label);

  const Matrix kernel_p = covariance_kernel(units_p, p, depth_max, refine_tol);
  const Matrix kernel_q = covariance_kernel(units_q, q, depth_max, refine_tol);
  const Matrix kernel_pq =
      covariance_kernel(product_units, pq, depth_max, refine_tol, &pq_cache);

  double deviation = 0.0;
  for (std::size_t a = 0; a < product_units.size(); ++a)
    for (std::size_t b = 0; b < product_units.size(); ++b) {
      const cxd expected = kernel_p(pair_of[a].first, pair_of[b].first) +
                           kernel_q(pair_of[a].second, pair_of[b].second);
      deviation = std::max(deviation, std::abs(kernel_pq(a, b) - expected));
    }
  out.max_kernel_deviation = deviation;
  out.product_kernel_ok = deviation <= kAdditivityTol;

  std::vector<std::string> labels_p, labels_q;
  for (const auto& u : units_p) labels_p.push_back(u.label);
  for (const auto& u : units_q) labels_q.push_back(u.label);
  out.bound_p = index_report_from_kernel(kernel_p, labels_p, rank_tol).index_lower_bound;
  out.bound_q = index_report_from_kernel(kernel_q, labels_q, rank_tol).index_lower_bound;
  out.lhs =
      index_report_from_kernel(kernel_pq, out.product_labels, rank_tol).index_lower_bound;
  out.rhs = out.bound_p + out.bound_q;
  return out;
}

DilationCheckReport trivial_dilation_check(const CPSemigroup& p,
                                           const std::vector<UnitCandidate>& units, double tol,
                                           double rank_tol, int depth_max, double refine_tol) {
  if (units.empty()) {
    throw error(errc::invalid_argument, "trivial_dilation_check: empty unit family");
  }
  const std::vector<double> sample_ts = {0.25, 0.5, 1.0};
  for (const double t : sample_ts) {
    if (!is_multiplicative(p.evolve(t), tol)) {
      throw error(errc::not_multiplicative,
                  "trivial_dilation_check: semigroup is not multiplicative at t = " +
                      std::to_string(t) + "; only automorphism semigroups qualify");
    }
  }
  MosCache cache(p, rank_tol);
  const std::vector<double> grid = default_unit_grid();
  for (const auto& u : units) {
    const UnitVerification v = verify_unit(u, p, grid, tol, &cache);
    if (!v.verified) {
      throw error(errc::invalid_argument,
                  "trivial_dilation_check: unit '" + u.label + "' failed verification: " + v.reason);
    }
  }

  DilationCheckReport out;
  out.multiplicative = true;

  // (i) The intertwiner inner product <S, T> 1 = T^* S against the
  // metric-operator-space inner product, on the intertwiner basis.
  const Eigen::Index d = p.dim();
  for (const double t : sample_ts) {
    const CPMap pt = p.evolve(t);
    const std::vector<Matrix> ints = endo_intertwiners(pt, tol);
    const MetricOperatorSpace& mos = cache.at(t);
    const auto r = static_cast<Eigen::Index>(ints.size());
    Matrix gram_int(r, r);
    Matrix gram_mos(r, r);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < r; ++j) {
        const Matrix prod = ints[j].adjoint() * ints[i];
        const cxd scalar = prod.trace() / static_cast<double>(d);
        if ((prod - scalar * Matrix::Identity(d, d)).norm() > tol * (1.0 + std::abs(scalar)) * d) {
          throw error(errc::inconsistency,
                      "trivial_dilation_check: intertwiner product is not scalar");
        }
        gram_int(i, j) = scalar;
        gram_mos(i, j) = mos.inner(ints[i], ints[j]);
      }
    out.intertwiner_gram_deviation = std::max(out.intertwiner_gram_deviation,
                                              (gram_int - gram_mos).cwiseAbs().maxCoeff());
    const RealVector spec_int = hermitian_eig(0.5 * (gram_int + gram_int.adjoint())).eigenvalues;
    const RealVector spec_mos = hermitian_eig(0.5 * (gram_mos + gram_mos.adjoint())).eigenvalues;
    out.gram_spectrum_deviation = std::max(out.gram_spectrum_deviation,
                                           (spec_int - spec_mos).cwiseAbs().maxCoeff());
  }

  // (ii) For multiplicative semigroups, increment inner products are exactly
  // exponential: every partition gives the refined limit, and
  // <u1(t), u2(t)> = e^{t c(u1, u2)}.
  const double t_check = 1.0;
  const FamilyRefinement fam =
      family_refine(units, p, t_check, depth_max, refine_tol, &cache, /*branch_guard=*/false);
  const auto n = static_cast<Eigen::Index>(units.size());
  Matrix direct(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      direct(i, j) = unit_inner(units[i], units[j], p, t_check, &cache);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const cxd raw_limit =
          fam.limit(i, j) * std::exp(0.5 * (fam.kappa[i] + fam.kappa[j]) * t_check);
      out.partition_independence =
          std::max(out.partition_independence, std::abs(direct(i, j) - raw_limit));
      const cxd from_exponent = std::exp(t_check * fam.covariance(i, j));
      out.covariance_identity =
          std::max(out.covariance_identity, std::abs(direct(i, j) - from_exponent));
    }

  // (iii) Index through the partition limit vs direct single-step exponents.
  std::vector<std::string> labels;
  for (const auto& u : units) labels.push_back(u.label);
  Matrix direct_kernel(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) direct_kernel(i, j) = std::log(direct(i, j)) / t_check;
  direct_kernel = 0.5 * (direct_kernel + direct_kernel.adjoint()).eval();
  out.index_partition_route =
      index_report_from_kernel(0.5 * (fam.covariance + fam.covariance.adjoint()), labels, rank_tol)
          .index_lower_bound;
  out.index_direct_route =
      index_report_from_kernel(direct_kernel, labels, rank_tol).index_lower_bound;

  out.passed = out.gram_spectrum_deviation <= 1e-8 && out.partition_independence <= 1e-10 &&
               out.covariance_identity <= 1e-6 &&
               out.index_partition_route == out.index_direct_route;
  return out;
}

}  // namespace mosgroup
