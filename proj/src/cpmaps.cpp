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

#include "mosgroup/cpmaps.hpp"

#include <Eigen/SVD>
#include <algorithm>

namespace mosgroup {

namespace {

// Deterministic phase convention: rotate so the largest-modulus entry is
// real positive.  First occurrence in column-major order wins ties.
Matrix fix_phase(const Matrix& m) {
  Eigen::Index best = 0;
  double best_mod = -1.0;
  const auto* data = m.data();
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    const double mod = std::abs(data[k]);
    if (mod > best_mod) {
      best_mod = mod;
      best = k;
    }
  }
  if (best_mod <= 0.0) return m;
  const cxd phase = data[best] / best_mod;
  return m * std::conj(phase);
}

Matrix choi_of_kraus(Eigen::Index dim, const std::vector<Matrix>& kraus) {
  Matrix choi = Matrix::Zero(dim * dim, dim * dim);
  for (const Matrix& v : kraus) {
    const Vector w = vec(v);
    choi.noalias() += w * w.adjoint();
  }
  return choi;
}

}  // namespace

CPMap::CPMap(Eigen::Index dim, std::vector<Matrix> kraus, Matrix choi)
    : dim_(dim), kraus_(std::move(kraus)), choi_(std::move(choi)) {}

CPMap CPMap::from_kraus(std::vector<Matrix> kraus) {
  if (kraus.empty()) {
    throw error(errc::invalid_argument, "CPMap: empty Kraus family; use CPMap::zero(dim)");
  }
  const Eigen::Index d = kraus.front().rows();
  for (const Matrix& v : kraus) {
    if (v.rows() != d || v.cols() != d) {
      throw error(errc::invalid_argument, "CPMap: Kraus operators must all be d x d");
    }
    if (!all_finite(v)) {
      throw error(errc::invalid_argument, "CPMap: Kraus operator has non-finite entries");
    }
  }
  Matrix choi = choi_of_kraus(d, kraus);
  return CPMap(d, std::move(kraus), std::move(choi));
}

CPMap CPMap::from_choi(Matrix choi, double psd_tol) {
  const Eigen::Index n = choi.rows();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n))));
  if (choi.cols() != n || d * d != n) {
    throw error(errc::invalid_argument, "CPMap: Choi matrix must be d^2 x d^2");
  }
  const HermitianEig eig = hermitian_eig(choi);
  const double lambda_max = eig.eigenvalues.size() ? eig.eigenvalues(0) : 0.0;
  const double lambda_min = eig.eigenvalues.size() ? eig.eigenvalues(eig.eigenvalues.size() - 1) : 0.0;
  if (lambda_min < -psd_tol * std::max(1.0, std::abs(lambda_max))) {
    throw error(errc::not_psd, "CPMap: Choi matrix is not PSD within tolerance");
  }
  std::vector<Matrix> kraus;
  const double floor = kSpectralFloor * std::max(lambda_max, 0.0);
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
    const double mu = eig.eigenvalues(k);
    if (mu <= floor || mu <= 0.0) break;
    kraus.push_back(fix_phase(std::sqrt(mu) * unvec(eig.eigenvectors.col(k))));
  }
  return CPMap(d, std::move(kraus), std::move(choi));
}

CPMap CPMap::identity(Eigen::Index dim) {
  return from_kraus({Matrix::Identity(dim, dim)});
}

CPMap CPMap::zero(Eigen::Index dim) {
  return CPMap(dim, {}, Matrix::Zero(dim * dim, dim * dim));
}

Matrix CPMap::apply(const Matrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_) {
    throw error(errc::invalid_argument, "CPMap::apply: dimension mismatch");
  }
  Matrix out = Matrix::Zero(dim_, dim_);
  for (const Matrix& v : kraus_) {
    out.noalias() += v * x * v.adjoint();
  }
  return out;
}

Matrix CPMap::superoperator() const {
  return superop_from_choi(choi_, dim_);
}

CPMap CPMap::scaled(double s) const {
  if (s < 0.0) {
    throw error(errc::invalid_argument, "CPMap::scaled: negative scale breaks positivity");
  }
  std::vector<Matrix> kraus;
  kraus.reserve(kraus_.size());
  const double root = std::sqrt(s);
  for (const Matrix& v : kraus_) kraus.push_back(root * v);
  return CPMap(dim_, std::move(kraus), s * choi_);
}

Matrix choi_from_superop(const Matrix& superop, Eigen::Index dim) {
  const Eigen::Index n = dim * dim;
  if (superop.rows() != n || superop.cols() != n) {
    throw error(errc::invalid_argument, "choi_from_superop: expected d^2 x d^2 input");
  }
  Matrix choi(n, n);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      for (Eigen::Index k = 0; k < dim; ++k)
        for (Eigen::Index l = 0; l < dim; ++l)
          choi(i + dim * j, k + dim * l) = superop(k * dim + i, l * dim + j);
  return choi;
}

Matrix superop_from_choi(const Matrix& choi, Eigen::Index dim) {
  const Eigen::Index n = dim * dim;
  if (choi.rows() != n || choi.cols() != n) {
    throw error(errc::invalid_argument, "superop_from_choi: expected d^2 x d^2 input");
  }
  Matrix superop(n, n);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      for (Eigen::Index k = 0; k < dim; ++k)
        for (Eigen::Index l = 0; l < dim; ++l)
          superop(k * dim + i, l * dim + j) = choi(i + dim * j, k + dim * l);
  return superop;
}

CPMap omega(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw error(errc::invalid_argument, "omega: matrix must be square");
  }
  if (a.isZero(0.0)) return CPMap::zero(a.rows());
  return CPMap::from_kraus({a});
}

OrderCertificate cp_leq(const CPMap& l1, const CPMap& l2, double tol,
                        const std::string& lhs_label, const std::string& rhs_label) {
  if (l1.dim() != l2.dim()) {
    throw error(errc::invalid_argument, "cp_leq: dimension mismatch");
  }
  const Matrix diff = l2.choi() - l1.choi();
  const PsdCheck check = is_psd(diff, tol);
  OrderCertificate cert;
  cert.lhs_label = lhs_label;
  cert.rhs_label = rhs_label;
  cert.difference_min_eigenvalue = check.min_eigenvalue;
  cert.verdict = check.psd;
  return cert;
}

MetricOperatorSpace::MetricOperatorSpace(const CPMap& p, double rank_tol) : dim_(p.dim()) {
  const HermitianEig eig = hermitian_eig(p.choi());
  const Eigen::Index n = eig.eigenvalues.size();
  const double lambda_max = n ? eig.eigenvalues(0) : 0.0;
  if (n && eig.eigenvalues(n - 1) < -kDefaultPsdTol * std::max(1.0, std::abs(lambda_max))) {
    throw error(errc::not_psd, "metric_operator_space: Choi matrix is not PSD");
  }
  choi_pinv_ = Matrix::Zero(dim_ * dim_, dim_ * dim_);
  range_projection_ = Matrix::Zero(dim_ * dim_, dim_ * dim_);
  if (lambda_max <= 0.0) return;  // zero map: empty basis, rank 0

  const double basis_cut = rank_tol * lambda_max;
  const double floor_cut = kSpectralFloor * lambda_max;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mu = eig.eigenvalues(k);
    if (mu <= floor_cut || mu <= 0.0) break;
    const Vector w = eig.eigenvectors.col(k);
    choi_pinv_.noalias() += (1.0 / mu) * w * w.adjoint();
    range_projection_.noalias() += w * w.adjoint();
    if (mu > basis_cut) {
      basis_.push_back(fix_phase(std::sqrt(mu) * unvec(w)));
    }
  }
}

MetricOperatorSpace::Membership MetricOperatorSpace::member(const Matrix& a, double tol) const {
  if (a.rows() != dim_ || a.cols() != dim_) {
    throw error(errc::invalid_argument, "mos_member: dimension mismatch");
  }
  Membership out;
  const Vector w = vec(a);
  const double norm = w.norm();
  if (norm == 0.0) {
    out.member = true;
    return out;
  }
  const Vector outside = w - range_projection_ * w;
  out.residual = outside.norm() / norm;
  out.member = out.residual <= tol;
  if (out.member) {
    out.norm_sq = std::real(cxd(w.adjoint() * choi_pinv_ * w));
  }
  return out;
}

cxd MetricOperatorSpace::inner(const Matrix& a, const Matrix& b, double member_tol) const {
  if (!member(a, member_tol).member || !member(b, member_tol).member) {
    throw error(errc::not_member, "mos_inner: operand is not in the metric operator space");
  }
  return cxd(vec(b).adjoint() * choi_pinv_ * vec(a));
}

MetricOperatorSpace metric_operator_space(const CPMap& p, double rank_tol) {
  return MetricOperatorSpace(p, rank_tol);
}

cxd mos_inner(const Matrix& a, const Matrix& b, const MetricOperatorSpace& s) {
  return s.inner(a, b);
}

MetricOperatorSpace::Membership mos_member(const Matrix& a, const MetricOperatorSpace& s,
                                           double tol) {
  return s.member(a, tol);
}

CPMap compose(const CPMap& p1, const CPMap& p2) {
  if (p1.dim() != p2.dim()) {
    throw error(errc::invalid_argument, "compose: dimension mismatch");
  }
  if (p1.kraus().empty() || p2.kraus().empty()) return CPMap::zero(p1.dim());
  std::vector<Matrix> kraus;
  kraus.reserve(p1.kraus().size() * p2.kraus().size());
  for (const Matrix& u : p1.kraus())
    for (const Matrix& v : p2.kraus()) kraus.push_back(u * v);
  return CPMap::from_kraus(std::move(kraus));
}

Matrix comultiplication_gram(const CPMap& p1, const CPMap& p2, double rank_tol) {
  const MetricOperatorSpace s1 = metric_operator_space(p1, rank_tol);
  const MetricOperatorSpace s2 = metric_operator_space(p2, rank_tol);
  const MetricOperatorSpace s12 = metric_operator_space(compose(p1, p2), rank_tol);
  const Eigen::Index r1 = s1.rank();
  const Eigen::Index r2 = s2.rank();

  std::vector<Matrix> products;
  products.reserve(r1 * r2);
  for (Eigen::Index i = 0; i < r1; ++i)
    for (Eigen::Index j = 0; j < r2; ++j) {
      Matrix prod = s1.basis()[i] * s2.basis()[j];
      if (!s12.member(prod).member) {
        throw error(errc::inconsistency,
                    "comultiplication_gram: basis product fell outside the composed space");
      }
      products.push_back(std::move(prod));
    }

  Matrix gram(r1 * r2, r1 * r2);
  for (Eigen::Index row = 0; row < gram.rows(); ++row)
    for (Eigen::Index col = 0; col < gram.cols(); ++col)
      gram(row, col) = s12.inner(products[row], products[col]);
  return gram;
}

Matrix comultiplication_isometry_map(const CPMap& p, double rank_tol) {
  const MetricOperatorSpace s = metric_operator_space(p, rank_tol);
  const Eigen::Index d = p.dim();
  const Eigen::Index r = s.rank();
  Matrix v(r * d, d);
  for (Eigen::Index k = 0; k < r; ++k) {
    v.block(k * d, 0, d, d) = s.basis()[k].adjoint();
  }
  return v;
}

bool is_multiplicative(const CPMap& p, double tol) {
  const Eigen::Index d = p.dim();
  std::vector<Matrix> images(d * d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) {
      Matrix unit = Matrix::Zero(d, d);
      unit(a, b) = 1.0;
      images[a * d + b] = p.apply(unit);
    }
  // E_ab E_cd = delta_bc E_ad, so multiplicativity on matrix units reads
  // P(E_ad) delta_bc = P(E_ab) P(E_cd).
  double scale = 1.0;
  for (const Matrix& img : images) scale = std::max(scale, img.norm());
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b)
      for (Eigen::Index c = 0; c < d; ++c)
        for (Eigen::Index e = 0; e < d; ++e) {
          const Matrix lhs = (b == c) ? images[a * d + e] : Matrix::Zero(d, d);
          const Matrix rhs = images[a * d + b] * images[c * d + e];
          if ((lhs - rhs).norm() > tol * scale * scale) return false;
        }
  return true;
}

std::vector<Matrix> endo_intertwiners(const CPMap& p, double tol) {
  if (!is_multiplicative(p, tol)) {
    throw error(errc::not_multiplicative, "endo_intertwiners: map is not multiplicative");
  }
  const Eigen::Index d = p.dim();
  // Stack the linear constraints P(E_ab) T - T E_ab = 0 over all matrix
  // units; vec(A T) = (1 (x) A) vec(T), vec(T B) = (B^T (x) 1) vec(T).
  Matrix system(d * d * d * d, d * d);
  const Matrix id = Matrix::Identity(d, d);
  Eigen::Index row = 0;
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) {
      Matrix unit = Matrix::Zero(d, d);
      unit(a, b) = 1.0;
      system.block(row, 0, d * d, d * d) =
          kron(id, p.apply(unit)) - kron(unit.transpose(), id);
      row += d * d;
    }
  Eigen::JacobiSVD<Matrix> svd(system, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = std::max(tol, 1e-10) * (sv.size() ? sv(0) : 0.0);
  std::vector<Matrix> out;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > cutoff) continue;
    // Null vectors are Frobenius-orthonormal; sqrt(d) rescales to
    // intertwiner-norm 1 since <T, T> 1 = T^* T and tr(T^* T) = d <T, T>.
    out.push_back(fix_phase(std::sqrt(static_cast<double>(d)) *
                            unvec(svd.matrixV().col(k))));
  }
  return out;
}

}  // namespace mosgroup
