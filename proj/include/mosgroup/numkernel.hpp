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

#include <Eigen/Dense>
#include <complex>

#include "mosgroup/error.hpp"

namespace mosgroup {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Eigenvalues below kSpectralFloor * lambda_max are genuine zero modes;
// this is the roundoff floor, distinct from the coarser (configurable)
// rank_tol used for reported rank decisions.
inline constexpr double kSpectralFloor = 1e-12;

inline constexpr double kDefaultPsdTol = 1e-8;
inline constexpr double kDefaultRankTol = 1e-6;

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending,
/// eigenvectors as unitary column matrix.  A = U diag(w) U^*.
struct HermitianEig {
  RealVector eigenvalues;
  Matrix eigenvectors;
};

struct PsdCheck {
  bool psd = false;
  double min_eigenvalue = 0.0;
};

struct PsdPseudoInverse {
  Matrix pinv;
  Eigen::Index rank = 0;
};

bool all_finite(const Matrix& m);

/// Column-stacking vectorization; <vec(a), vec(b)> = trace(b^* a).
Vector vec(const Matrix& m);
Matrix unvec(const Vector& w);

Matrix kron(const Matrix& a, const Matrix& b);

/// Requires ||a - a^*||_F <= 1e-10 (1 + ||a||_F); the input is symmetrized
/// before decomposition.
HermitianEig hermitian_eig(const Matrix& a);

/// psd iff min eigenvalue >= -tol * max(1, ||a||_2).
PsdCheck is_psd(const Matrix& a, double tol = kDefaultPsdTol);

Matrix matrix_exp(const Matrix& a);

/// Moore-Penrose inverse of a PSD matrix; eigenvalues below
/// rank_tol * lambda_max are treated as zero.
PsdPseudoInverse psd_pseudoinverse(const Matrix& a, double rank_tol = kDefaultRankTol);

}  // namespace mosgroup
