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

// Shared fixtures and independent oracles for the test suites.  Everything
// here stays independent of the library code paths it is used to check:
// random inputs are generated from a self-contained PRNG pipeline, and the
// oracles are brute-force or quadrature-style recomputations.

#pragma once

#include <complex>
#include <random>
#include <vector>

#include "mosgroup/index.hpp"

namespace testsupport {

using mosgroup::cxd;
using mosgroup::Matrix;
using mosgroup::Vector;

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << cxd(0, 0), cxd(0, -1), cxd(0, 1), cxd(0, 0);
  return m;
}

inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

/// Cyclic shift on C^3: e0 -> e1 -> e2 -> e0.
inline Matrix shift3() {
  Matrix m = Matrix::Zero(3, 3);
  m(1, 0) = 1;
  m(2, 1) = 1;
  m(0, 2) = 1;
  return m;
}

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}

  double uniform() { return (engine() >> 11) * 0x1.0p-53; }

  double gauss() {
    double u1 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * uniform());
  }

  cxd cgauss() { return cxd(gauss(), gauss()) / std::sqrt(2.0); }

  Matrix complex_matrix(Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
      for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = cgauss();
    return m;
  }

  Matrix hermitian(Eigen::Index d) {
    const Matrix g = complex_matrix(d, d);
    return 0.5 * (g + g.adjoint());
  }

  Matrix unitary(Eigen::Index d) {
    const Matrix g = complex_matrix(d, d);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    // Fix the phase of each column so the factorization is unique.
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < d; ++k) {
      const cxd diag = r(k, k);
      if (std::abs(diag) > 0) q.col(k) *= diag / std::abs(diag);
    }
    return q;
  }

  /// Random CP map with the given number of Kraus operators, scaled to a
  /// moderate norm.
  mosgroup::CPMap cp_map(Eigen::Index d, int kraus_count) {
    std::vector<Matrix> kraus;
    for (int k = 0; k < kraus_count; ++k) kraus.push_back(0.7 * complex_matrix(d, d));
    return mosgroup::CPMap::from_kraus(std::move(kraus));
  }
};

/// Brute-force Kronecker product, the index-formula oracle.
inline Matrix kron_oracle(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// Generator action in GKS form, written out directly (not via the
/// superoperator): the right-hand side of the observable master equation.
inline Matrix gks_apply(const Matrix& h, const std::vector<Matrix>& noise, const Matrix& x) {
  const cxd i_unit(0, 1);
  Matrix out = i_unit * (h * x - x * h);
  for (const Matrix& v : noise) {
    const Matrix m = v.adjoint() * v;
    out += v.adjoint() * x * v - 0.5 * (m * x + x * m);
  }
  return out;
}

/// Classical RK4 integration of dX/dt = L(X); the ODE oracle for evolve().
inline Matrix rk4_evolve(const Matrix& h, const std::vector<Matrix>& noise, const Matrix& x0,
                         double t, int steps) {
  Matrix x = x0;
  const double dt = t / steps;
  for (int s = 0; s < steps; ++s) {
    const Matrix k1 = gks_apply(h, noise, x);
    const Matrix k2 = gks_apply(h, noise, x + 0.5 * dt * k1);
    const Matrix k3 = gks_apply(h, noise, x + 0.5 * dt * k2);
    const Matrix k4 = gks_apply(h, noise, x + dt * k3);
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

inline mosgroup::CPSemigroup identity_semigroup(Eigen::Index d = 2) {
  mosgroup::GKSGenerator g;
  g.dim = d;
  g.hamiltonian = Matrix::Zero(d, d);
  return mosgroup::CPSemigroup(std::move(g), "identity");
}

inline mosgroup::CPSemigroup sigma_x_semigroup() {
  mosgroup::GKSGenerator g;
  g.dim = 2;
  g.hamiltonian = Matrix::Zero(2, 2);
  g.noise_ops = {pauli_x()};
  return mosgroup::CPSemigroup(std::move(g), "noise-x");
}

inline mosgroup::CPSemigroup sigma_z_noise_semigroup() {
  mosgroup::GKSGenerator g;
  g.dim = 2;
  g.hamiltonian = Matrix::Zero(2, 2);
  g.noise_ops = {pauli_z()};
  return mosgroup::CPSemigroup(std::move(g), "noise-z");
}

inline mosgroup::CPSemigroup sigma_xz_semigroup() {
  mosgroup::GKSGenerator g;
  g.dim = 2;
  g.hamiltonian = Matrix::Zero(2, 2);
  g.noise_ops = {pauli_x(), pauli_z()};
  return mosgroup::CPSemigroup(std::move(g), "noise-xz");
}

inline mosgroup::CPSemigroup sigma_z_unitary_semigroup() {
  mosgroup::GKSGenerator g;
  g.dim = 2;
  g.hamiltonian = pauli_z();
  return mosgroup::CPSemigroup(std::move(g), "unitary-z");
}

inline mosgroup::CPSemigroup shift_noise_semigroup() {
  mosgroup::GKSGenerator g;
  g.dim = 3;
  g.hamiltonian = Matrix::Zero(3, 3);
  g.noise_ops = {shift3()};
  return mosgroup::CPSemigroup(std::move(g), "shift-noise");
}

inline mosgroup::UnitCandidate unit_of(const Matrix& b, const std::string& label) {
  return mosgroup::UnitCandidate::make(b, label);
}

}  // namespace testsupport
