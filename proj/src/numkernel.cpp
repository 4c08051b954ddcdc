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

#include "mosgroup/numkernel.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace mosgroup {

bool all_finite(const Matrix& m) {
  return m.array().isFinite().all();
}

Vector vec(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw error(errc::invalid_argument, "vec: matrix must be square");
  }
  // MatrixXcd is column-major, so a flat view is exactly column stacking.
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvec(const Vector& w) {
  const auto n = w.size();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n))));
  if (d * d != n) {
    throw error(errc::invalid_argument, "unvec: length is not a perfect square");
  }
  return Eigen::Map<const Matrix>(w.data(), d, d);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b);
}

HermitianEig hermitian_eig(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw error(errc::invalid_argument, "hermitian_eig: matrix must be square");
  }
  const double defect = (a - a.adjoint()).norm();
  if (defect > 1e-10 * (1.0 + a.norm())) {
    throw error(errc::not_hermitian, "hermitian_eig: input is not Hermitian within tolerance");
  }
  const Matrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw error(errc::inconsistency, "hermitian_eig: eigensolver failed");
  }
  // Solver returns ascending order; flip to descending.
  HermitianEig out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

PsdCheck is_psd(const Matrix& a, double tol) {
  const HermitianEig eig = hermitian_eig(a);
  PsdCheck out;
  if (eig.eigenvalues.size() == 0) {
    out.psd = true;
    return out;
  }
  out.min_eigenvalue = eig.eigenvalues.minCoeff();
  const double spectral_norm = eig.eigenvalues.cwiseAbs().maxCoeff();
  out.psd = out.min_eigenvalue >= -tol * std::max(1.0, spectral_norm);
  return out;
}

Matrix matrix_exp(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw error(errc::invalid_argument, "matrix_exp: matrix must be square");
  }
  if (!all_finite(a)) {
    throw error(errc::invalid_argument, "matrix_exp: input has non-finite entries");
  }
  return a.exp();  // scaling-and-squaring with Pade approximant
}

PsdPseudoInverse psd_pseudoinverse(const Matrix& a, double rank_tol) {
  const HermitianEig eig = hermitian_eig(a);
  const auto n = eig.eigenvalues.size();
  PsdPseudoInverse out;
  out.pinv = Matrix::Zero(a.rows(), a.cols());
  if (n == 0) return out;

  const double lambda_max = eig.eigenvalues(0);
  const double lambda_min = eig.eigenvalues(n - 1);
  if (lambda_min < -kDefaultPsdTol * std::max(1.0, std::abs(lambda_max))) {
    throw error(errc::not_psd, "psd_pseudoinverse: input is not PSD within tolerance");
  }
  if (lambda_max <= 0.0) return out;  // zero matrix

  const double threshold = rank_tol * lambda_max;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mu = eig.eigenvalues(k);
    if (mu <= threshold || mu <= 0.0) break;
    out.pinv.noalias() +=
        (1.0 / mu) * eig.eigenvectors.col(k) * eig.eigenvectors.col(k).adjoint();
    ++out.rank;
  }
  return out;
}

}  // namespace mosgroup
