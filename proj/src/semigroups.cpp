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

#include "mosgroup/semigroups.hpp"

namespace mosgroup {

void GKSGenerator::validate() const {
  if (dim < 1) {
    throw error(errc::invalid_argument, "GKSGenerator: dimension must be positive");
  }
  if (dim > kMaxDim) {
    throw error(errc::dimension_guard, "GKSGenerator: dimension exceeds the desk-scale cap of 8");
  }
  if (hamiltonian.rows() != dim || hamiltonian.cols() != dim) {
    throw error(errc::invalid_argument, "GKSGenerator: Hamiltonian must be d x d");
  }
  if ((hamiltonian - hamiltonian.adjoint()).norm() > 1e-10 * (1.0 + hamiltonian.norm())) {
    throw error(errc::not_hermitian, "GKSGenerator: Hamiltonian is not Hermitian");
  }
  for (const Matrix& v : noise_ops) {
    if (v.rows() != dim || v.cols() != dim) {
      throw error(errc::invalid_argument, "GKSGenerator: noise operator must be d x d");
    }
    if (!all_finite(v)) {
      throw error(errc::invalid_argument, "GKSGenerator: noise operator has non-finite entries");
    }
  }
  if (decay) {
    if (decay->rows() != dim || decay->cols() != dim) {
      throw error(errc::invalid_argument, "GKSGenerator: decay term must be d x d");
    }
    if (!is_psd(*decay).psd) {
      throw error(errc::not_psd, "GKSGenerator: decay term must be PSD");
    }
  }
}

Matrix GKSGenerator::superoperator() const {
  const Matrix id = Matrix::Identity(dim, dim);
  const cxd i_unit(0.0, 1.0);
  // vec(A x B) = (B^T (x) A) vec(x) in column-stacking convention.
  Matrix l = i_unit * (kron(id, hamiltonian) - kron(hamiltonian.transpose(), id));
  for (const Matrix& v : noise_ops) {
    const Matrix m = v.adjoint() * v;
    l.noalias() += kron(v.transpose(), v.adjoint());
    l.noalias() -= 0.5 * kron(id, m);
    l.noalias() -= 0.5 * kron(m.transpose(), id);
  }
  if (decay) {
    l.noalias() -= 0.5 * kron(id, *decay);
    l.noalias() -= 0.5 * kron(decay->transpose(), id);
  }
  return l;
}

CPSemigroup::CPSemigroup(GKSGenerator generator, std::string label)
    : generator_(std::move(generator)), label_(std::move(label)) {
  generator_.validate();
  superop_ = generator_.superoperator();
}

CPMap CPSemigroup::evolve(double t) const {
  if (t < 0.0) {
    throw error(errc::invalid_argument, "evolve: time must be nonnegative");
  }
  if (t > kMaxEvolveTime) {
    throw error(errc::dimension_guard, "evolve: time exceeds the overflow guard");
  }
  const Matrix st = matrix_exp(t * superop_);
  return CPMap::from_choi(choi_from_superop(st, dim()));
}

bool is_unital(const CPSemigroup& p, const std::vector<double>& t_grid, double tol) {
  if (t_grid.empty()) {
    throw error(errc::invalid_argument, "is_unital: empty time grid");
  }
  const Matrix id = Matrix::Identity(p.dim(), p.dim());
  for (const double t : t_grid) {
    if ((p.evolve(t).apply(id) - id).norm() > tol) return false;
  }
  return true;
}

CPSemigroup tensor(const CPSemigroup& p, const CPSemigroup& q) {
  const Eigen::Index dp = p.dim();
  const Eigen::Index dq = q.dim();
  if (dp * dq > kMaxDim) {
    throw error(errc::dimension_guard, "tensor: combined dimension exceeds the cap of 8");
  }
  const Matrix idp = Matrix::Identity(dp, dp);
  const Matrix idq = Matrix::Identity(dq, dq);
  GKSGenerator g;
  g.dim = dp * dq;
  g.hamiltonian = kron(p.generator().hamiltonian, idq) + kron(idp, q.generator().hamiltonian);
  for (const Matrix& v : p.generator().noise_ops) g.noise_ops.push_back(kron(v, idq));
  for (const Matrix& w : q.generator().noise_ops) g.noise_ops.push_back(kron(idp, w));
  if (p.generator().decay || q.generator().decay) {
    Matrix r = Matrix::Zero(g.dim, g.dim);
    if (p.generator().decay) r += kron(*p.generator().decay, idq);
    if (q.generator().decay) r += kron(idp, *q.generator().decay);
    g.decay = std::move(r);
  }
  std::string label = p.label() + "(x)" + q.label();
  return CPSemigroup(std::move(g), std::move(label));
}

}  // namespace mosgroup
