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

#include <doctest.h>

#include "support.hpp"

using namespace mosgroup;
using namespace testsupport;

TEST_CASE("vec stacks columns and pairs with the trace inner product") {
  CHECK(vec(Matrix::Identity(2, 2)).isApprox(Vector{{cxd(1), cxd(0), cxd(0), cxd(1)}}, 0));

  // <vec(a), vec(b)> = trace(b^* a), checked directly.
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = rng.complex_matrix(3, 3);
    const Matrix b = rng.complex_matrix(3, 3);
    const cxd lhs = cxd(vec(b).adjoint() * vec(a));
    const cxd rhs = (b.adjoint() * a).trace();
    CHECK(std::abs(lhs - rhs) <= 1e-13);
  }
  CHECK(std::real(cxd(vec(pauli_x()).adjoint() * vec(pauli_x()))) == doctest::Approx(2.0));
}

TEST_CASE("unvec is the exact inverse of vec") {
  Rng rng(12);
  for (const Eigen::Index d : {1, 2, 3, 4}) {
    const Matrix a = rng.complex_matrix(d, d);
    CHECK((unvec(vec(a)) - a).norm() == 0.0);
    Vector w(d * d);
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = rng.cgauss();
    CHECK((vec(unvec(w)) - w).norm() == 0.0);
  }
  CHECK_THROWS_AS(vec(Matrix::Zero(2, 3)), error);
  CHECK_THROWS_AS(unvec(Vector::Zero(5)), error);
}

TEST_CASE("kron matches the brute-force index formula") {
  const Matrix a = pauli_x();
  const Matrix b = pauli_z();
  CHECK((kron(a, b) - kron_oracle(a, b)).norm() == 0.0);
  CHECK((kron(Matrix::Identity(1, 1), b) - b).norm() == 0.0);
  CHECK((kron(Matrix::Identity(2, 2), Matrix::Identity(2, 2)) - Matrix::Identity(4, 4)).norm() ==
        0.0);

  // Mixed-product property on composable shapes.
  Rng rng(13);
  const Matrix c = rng.complex_matrix(2, 3);
  const Matrix d = rng.complex_matrix(3, 2);
  const Matrix e = rng.complex_matrix(3, 2);
  const Matrix f = rng.complex_matrix(2, 3);
  CHECK((kron(c, e) * kron(d, f) - kron(c * d, e * f)).norm() <= 1e-12);
}

TEST_CASE("hermitian_eig satisfies its reconstruction contract") {
  SUBCASE("fixed examples") {
    Matrix diag = Matrix::Zero(2, 2);
    diag(0, 0) = 3;
    diag(1, 1) = 1;
    const HermitianEig eig = hermitian_eig(diag);
    CHECK(eig.eigenvalues(0) == doctest::Approx(3.0));
    CHECK(eig.eigenvalues(1) == doctest::Approx(1.0));

    const HermitianEig x = hermitian_eig(pauli_x());
    CHECK(x.eigenvalues(0) == doctest::Approx(1.0));
    CHECK(x.eigenvalues(1) == doctest::Approx(-1.0));
  }

  SUBCASE("random Hermitian inputs up to d^2 = 64") {
    Rng rng(14);
    for (const Eigen::Index d : {2, 4, 8}) {
      for (int trial = 0; trial < 10; ++trial) {
        const Matrix a = rng.hermitian(d);
        const HermitianEig eig = hermitian_eig(a);
        const Matrix lambda = eig.eigenvalues.cast<cxd>().asDiagonal();
        CHECK((a - eig.eigenvectors * lambda * eig.eigenvectors.adjoint()).norm() <=
              1e-10 * (1.0 + a.norm()));
        CHECK((eig.eigenvectors.adjoint() * eig.eigenvectors - Matrix::Identity(d, d)).norm() <=
              1e-10);
        for (Eigen::Index k = 1; k < d; ++k) {
          CHECK(eig.eigenvalues(k - 1) >= eig.eigenvalues(k));
        }
      }
    }
  }

  SUBCASE("non-Hermitian input is rejected") {
    Matrix bad(2, 2);
    bad << 0, 1, 0, 0;
    CHECK_THROWS_AS(hermitian_eig(bad), error);
  }
}

TEST_CASE("is_psd applies the relative tolerance contract") {
  const PsdCheck id_check = is_psd(Matrix::Identity(3, 3), 1e-8);
  CHECK(id_check.psd);
  CHECK(id_check.min_eigenvalue == doctest::Approx(1.0));

  Matrix indef = Matrix::Zero(2, 2);
  indef(0, 0) = 1;
  indef(1, 1) = -1;
  const PsdCheck indef_check = is_psd(indef, 1e-8);
  CHECK_FALSE(indef_check.psd);
  CHECK(indef_check.min_eigenvalue == doctest::Approx(-1.0));

  // Choi matrices of Kraus-built maps are PSD by construction.
  Rng rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    CHECK(is_psd(rng.cp_map(3, 2).choi(), 1e-8).psd);
  }
}

TEST_CASE("matrix_exp meets its accuracy contracts") {
  CHECK((matrix_exp(Matrix::Zero(4, 4)) - Matrix::Identity(4, 4)).norm() == 0.0);

  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 1;
  diag(1, 1) = 2;
  const Matrix e = matrix_exp(diag);
  CHECK(std::abs(e(0, 0) - cxd(std::exp(1.0))) <= 1e-13);
  CHECK(std::abs(e(1, 1) - cxd(std::exp(2.0))) <= 1e-13);
  CHECK(std::abs(e(0, 1)) <= 1e-15);

  SUBCASE("semigroup property") {
    Rng rng(16);
    for (int trial = 0; trial < 10; ++trial) {
      Matrix a = rng.complex_matrix(4, 4);
      a *= 5.0 / a.norm();
      for (const double s : {0.25, 0.5, 1.0}) {
        const double t = 1.0 - s * 0.5;
        const Matrix whole = matrix_exp((s + t) * a);
        const Matrix split = matrix_exp(s * a) * matrix_exp(t * a);
        CHECK((whole - split).norm() <= 1e-9 * (1.0 + whole.norm()));
      }
    }
  }

  SUBCASE("spectral oracle on a diagonalizable 16 x 16 superoperator-sized input") {
    Rng rng(17);
    const Matrix a = rng.complex_matrix(16, 16);
    Eigen::ComplexEigenSolver<Matrix> eig(a);
    REQUIRE(eig.info() == Eigen::Success);
    const Matrix v = eig.eigenvectors();
    Matrix expd = Matrix::Zero(16, 16);
    for (Eigen::Index k = 0; k < 16; ++k) expd(k, k) = std::exp(eig.eigenvalues()(k));
    const Matrix oracle = v * expd * v.inverse();
    CHECK((matrix_exp(a) - oracle).norm() <= 1e-8 * (1.0 + oracle.norm()));
  }
}

TEST_CASE("psd_pseudoinverse thresholds rank and inverts the range") {
  const auto id = psd_pseudoinverse(Matrix::Identity(3, 3), 1e-6);
  CHECK(id.rank == 3);
  CHECK((id.pinv - Matrix::Identity(3, 3)).norm() <= 1e-12);

  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 2;
  const auto half = psd_pseudoinverse(diag, 1e-6);
  CHECK(half.rank == 1);
  CHECK(std::abs(half.pinv(0, 0) - cxd(0.5)) <= 1e-14);
  CHECK(std::abs(half.pinv(1, 1)) <= 1e-14);

  SUBCASE("rank of the Choi matrix of a 2-Kraus map") {
    // Orthogonal Kraus pair: Choi rank exactly 2.
    const double r = 1.0 / std::sqrt(2.0);
    const CPMap p = CPMap::from_kraus({r * Matrix::Identity(2, 2), r * pauli_x()});
    CHECK(psd_pseudoinverse(p.choi(), 1e-6).rank == 2);
  }

  SUBCASE("a pinv(a) is the orthogonal projection onto range(a)") {
    Rng rng(18);
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix g = rng.complex_matrix(4, 2);
      const Matrix a = g * g.adjoint();  // PSD, rank <= 2
      const auto pi = psd_pseudoinverse(a, 1e-10);
      const Matrix proj = a * pi.pinv;
      CHECK((proj * proj - proj).norm() <= 1e-8);
      CHECK((proj - proj.adjoint()).norm() <= 1e-8);
      CHECK((proj * a - a).norm() <= 1e-8 * a.norm());
      CHECK((a * pi.pinv * a - a).norm() <= 1e-8 * a.norm());
    }
  }

  SUBCASE("non-PSD input is rejected") {
    Matrix indef = Matrix::Zero(2, 2);
    indef(0, 0) = 1;
    indef(1, 1) = -1;
    CHECK_THROWS_AS(psd_pseudoinverse(indef, 1e-6), error);
  }
}
