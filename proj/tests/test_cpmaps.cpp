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

namespace {

CPMap bit_flip_map() {
  const double r = 1.0 / std::sqrt(2.0);
  return CPMap::from_kraus({r * Matrix::Identity(2, 2), r * pauli_x()});
}

}  // namespace

TEST_CASE("apply reproduces the Kraus sum and the superoperator route") {
  const CPMap id = CPMap::identity(2);
  CHECK((id.apply(pauli_z()) - pauli_z()).norm() == 0.0);

  Rng rng(21);
  const Matrix u = rng.unitary(2);
  const CPMap conj_u = CPMap::from_kraus({u});
  CHECK((conj_u.apply(Matrix::Identity(2, 2)) - Matrix::Identity(2, 2)).norm() <= 1e-13);

  // Hand expansion: (sigma_z + sigma_x sigma_z sigma_x) / 2 = 0.
  CHECK(bit_flip_map().apply(pauli_z()).norm() <= 1e-14);

  for (int trial = 0; trial < 10; ++trial) {
    const CPMap p = rng.cp_map(3, 2);
    const Matrix x = rng.complex_matrix(3, 3);
    const Matrix via_kraus = p.apply(x);
    const Matrix via_superop = unvec(p.superoperator() * vec(x));
    CHECK((via_kraus - via_superop).norm() <= 1e-10 * (1.0 + via_kraus.norm()));
  }
}

TEST_CASE("choi reshuffle is the exact inverse pair") {
  Rng rng(22);
  for (const Eigen::Index d : {2, 3}) {
    const CPMap p = rng.cp_map(d, 2);
    const Matrix s = p.superoperator();
    CHECK((choi_from_superop(s, d) - p.choi()).norm() <= 1e-12 * (1.0 + p.choi().norm()));
    CHECK((superop_from_choi(p.choi(), d) - s).norm() <= 1e-12 * (1.0 + s.norm()));
  }
}

TEST_CASE("omega builds elementary conjugations") {
  const CPMap id = omega(Matrix::Identity(2, 2));
  CHECK((id.choi() - CPMap::identity(2).choi()).norm() == 0.0);

  const CPMap zero = omega(Matrix::Zero(2, 2));
  CHECK(zero.kraus().empty());
  CHECK(zero.choi().norm() == 0.0);

  // Choi(omega(sigma_x)) = vec(sigma_x) vec(sigma_x)^*.
  const Matrix expected = vec(pauli_x()) * vec(pauli_x()).adjoint();
  CHECK((omega(pauli_x()).choi() - expected).norm() == 0.0);
}

TEST_CASE("cp_leq certifies the completely positive order") {
  const CPMap id = CPMap::identity(2);
  const OrderCertificate refl = cp_leq(id, id);
  CHECK(refl.verdict);
  CHECK(refl.difference_min_eigenvalue == doctest::Approx(0.0).epsilon(1e-12));

  // A minimal-Kraus element sits below its map.
  const CPMap flip = bit_flip_map();
  const MetricOperatorSpace mos = metric_operator_space(flip);
  for (const Matrix& e : mos.basis()) {
    CHECK(cp_leq(omega(e), flip).verdict);
  }

  // omega(sigma_x) is not below half the bit-flip map: the Choi difference
  // has a negative eigenvalue (eigen oracle).
  const CPMap half_flip = bit_flip_map().scaled(0.5);
  const OrderCertificate bad = cp_leq(omega(pauli_x()), half_flip);
  CHECK_FALSE(bad.verdict);
  const HermitianEig diff = hermitian_eig(half_flip.choi() - omega(pauli_x()).choi());
  CHECK(bad.difference_min_eigenvalue ==
        doctest::Approx(diff.eigenvalues.minCoeff()).epsilon(1e-10));

  CHECK_THROWS_AS(cp_leq(CPMap::identity(2), CPMap::identity(3)), error);
}

TEST_CASE("metric_operator_space extracts the minimal orthonormal basis") {
  SUBCASE("identity map") {
    const MetricOperatorSpace mos = metric_operator_space(CPMap::identity(2));
    REQUIRE(mos.rank() == 1);
    CHECK((mos.basis()[0] - Matrix::Identity(2, 2)).norm() <= 1e-12);
    CHECK(std::abs(mos.inner(Matrix::Identity(2, 2), Matrix::Identity(2, 2)) - cxd(1)) <= 1e-12);
  }

  SUBCASE("unitary conjugation has a rank-1 space spanned by the unitary") {
    Rng rng(23);
    const Matrix u = rng.unitary(3);
    const MetricOperatorSpace mos = metric_operator_space(CPMap::from_kraus({u}));
    REQUIRE(mos.rank() == 1);
    // Basis equals u up to the fixed phase.
    const cxd overlap = (mos.basis()[0].adjoint() * u).trace() / 3.0;
    CHECK(std::abs(std::abs(overlap) - 1.0) <= 1e-10);
  }

  SUBCASE("bit-flip map spans {1, sigma_x}") {
    const MetricOperatorSpace mos = metric_operator_space(bit_flip_map());
    REQUIRE(mos.rank() == 2);
    // Both basis elements lie in span{1, sigma_x}: vanishing components
    // along sigma_y and sigma_z.
    for (const Matrix& e : mos.basis()) {
      CHECK(std::abs((pauli_y().adjoint() * e).trace()) <= 1e-12);
      CHECK(std::abs((pauli_z().adjoint() * e).trace()) <= 1e-12);
    }
  }

  SUBCASE("orthonormality and reconstruction on random maps") {
    Rng rng(24);
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::Index d = 2 + trial % 2;
      const CPMap p = rng.cp_map(d, 2);
      const MetricOperatorSpace mos = metric_operator_space(p);
      for (Eigen::Index i = 0; i < mos.rank(); ++i)
        for (Eigen::Index j = 0; j < mos.rank(); ++j) {
          const cxd g = mos.inner(mos.basis()[i], mos.basis()[j]);
          CHECK(std::abs(g - (i == j ? cxd(1) : cxd(0))) <= 1e-8);
        }
      const Matrix x = rng.complex_matrix(d, d);
      Matrix recon = Matrix::Zero(d, d);
      for (const Matrix& e : mos.basis()) recon += e * x * e.adjoint();
      CHECK((recon - p.apply(x)).norm() <= 1e-8 * (1.0 + x.norm()));
    }
  }

  SUBCASE("zero map has an empty basis") {
    const MetricOperatorSpace mos = metric_operator_space(CPMap::zero(2));
    CHECK(mos.rank() == 0);
    CHECK(mos.member(Matrix::Zero(2, 2)).member);
    CHECK_FALSE(mos.member(Matrix::Identity(2, 2)).member);
  }
}

TEST_CASE("mos_inner is the pseudoinverse sandwich") {
  const MetricOperatorSpace mos = metric_operator_space(bit_flip_map());
  const Matrix e1 = mos.basis()[0];
  const Matrix e2 = mos.basis()[1];

  // Sesquilinearity: a = 2 e1 + i e2 has <a, a> = 5.
  const Matrix a = 2.0 * e1 + cxd(0, 1) * e2;
  CHECK(std::abs(mos.inner(a, a) - cxd(5)) <= 1e-10);
  CHECK(std::abs(mos.inner(a, e1) - cxd(2)) <= 1e-10);
  CHECK(std::abs(mos.inner(e1, a) - cxd(2)) <= 1e-10);
  CHECK(std::abs(mos.inner(a, e2) - cxd(0, 1)) <= 1e-10);

  // Hermitian symmetry on random members.
  Rng rng(25);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix u = rng.cgauss() * e1 + rng.cgauss() * e2;
    const Matrix v = rng.cgauss() * e1 + rng.cgauss() * e2;
    CHECK(std::abs(mos.inner(u, v) - std::conj(mos.inner(v, u))) <= 1e-10);
    CHECK(std::real(mos.inner(u, u)) >= -1e-12);
  }

  CHECK_THROWS_AS(mos.inner(pauli_z(), e1), error);
}

TEST_CASE("mos_member decides membership and the least order constant") {
  const CPMap flip = bit_flip_map();
  const MetricOperatorSpace mos = metric_operator_space(flip);

  const auto id_m = mos.member(Matrix::Identity(2, 2));
  CHECK(id_m.member);

  const auto z_m = mos.member(pauli_z());
  CHECK_FALSE(z_m.member);

  const Matrix sum = mos.basis()[0] + mos.basis()[1];
  const auto sum_m = mos.member(sum);
  REQUIRE(sum_m.member);
  CHECK(sum_m.norm_sq == doctest::Approx(2.0).epsilon(1e-8));

  SUBCASE("identity map: <1,1> = 1") {
    const MetricOperatorSpace id_mos = metric_operator_space(CPMap::identity(2));
    const auto m = id_mos.member(Matrix::Identity(2, 2));
    REQUIRE(m.member);
    CHECK(m.norm_sq == doctest::Approx(1.0).epsilon(1e-10));
  }

  SUBCASE("order soundness: member iff the conjugation is dominated") {
    Rng rng(26);
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::Index d = 2 + trial % 2;
      const CPMap p = rng.cp_map(d, 2);
      const MetricOperatorSpace s = metric_operator_space(p);
      // A member: random combination of the basis.
      Matrix a = Matrix::Zero(d, d);
      for (const Matrix& e : s.basis()) a += rng.cgauss() * e;
      const auto m = s.member(a);
      REQUIRE(m.member);
      CHECK(cp_leq(omega(a), p.scaled(m.norm_sq * (1.0 + 1e-6))).verdict);
      CHECK_FALSE(cp_leq(omega(a), p.scaled(m.norm_sq * (1.0 - 1e-3))).verdict);

      // A non-member: a random matrix falls outside a rank-deficient space.
      const Matrix g = rng.complex_matrix(d, d);
      if (!s.member(g).member) {
        const double k_cap = 1e6 * g.squaredNorm();
        CHECK_FALSE(cp_leq(omega(g), p.scaled(k_cap), 1e-12).verdict);
      }
    }
  }
}

TEST_CASE("compose multiplies Kraus families and superoperators") {
  Rng rng(27);
  const CPMap p = rng.cp_map(2, 2);

  SUBCASE("identity is neutral") {
    CHECK((compose(CPMap::identity(2), p).choi() - p.choi()).norm() <= 1e-10);
    CHECK((compose(p, CPMap::identity(2)).choi() - p.choi()).norm() <= 1e-10);
  }

  SUBCASE("omega(a) omega(b) = omega(ab)") {
    const Matrix a = rng.complex_matrix(2, 2);
    const Matrix b = rng.complex_matrix(2, 2);
    CHECK((compose(omega(a), omega(b)).choi() - omega(a * b).choi()).norm() <= 1e-12);
  }

  SUBCASE("superoperator-product oracle on random pairs") {
    for (int trial = 0; trial < 10; ++trial) {
      const CPMap p1 = rng.cp_map(2, 2);
      const CPMap p2 = rng.cp_map(2, 3);
      const Matrix direct = compose(p1, p2).superoperator();
      const Matrix oracle = p1.superoperator() * p2.superoperator();
      CHECK((direct - oracle).norm() <= 1e-9 * (1.0 + oracle.norm()));
    }
  }

  SUBCASE("apply matches the nested application") {
    const CPMap p2 = rng.cp_map(2, 2);
    const Matrix x = rng.complex_matrix(2, 2);
    CHECK((compose(p, p2).apply(x) - p.apply(p2.apply(x))).norm() <= 1e-9);
  }
}

TEST_CASE("basis invariance: any unitary remix of a minimal basis rebuilds the map") {
  Rng rng(28);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index d = 2 + trial % 2;
    const CPMap p = rng.cp_map(d, 2);
    const MetricOperatorSpace mos = metric_operator_space(p);
    const Eigen::Index r = mos.rank();
    const Matrix w = rng.unitary(r);
    std::vector<Matrix> remixed(r, Matrix::Zero(d, d));
    for (Eigen::Index k = 0; k < r; ++k)
      for (Eigen::Index j = 0; j < r; ++j) remixed[k] += w(k, j) * mos.basis()[j];
    const CPMap rebuilt = CPMap::from_kraus(remixed);
    CHECK((rebuilt.choi() - p.choi()).norm() <= 1e-9 * (1.0 + p.choi().norm()));
  }
}

TEST_CASE("comultiplication gram is a Hermitian projection of the right trace") {
  SUBCASE("identity pair") {
    const Matrix g = comultiplication_gram(CPMap::identity(2), CPMap::identity(2));
    REQUIRE(g.rows() == 1);
    CHECK(std::abs(g(0, 0) - cxd(1)) <= 1e-10);
  }

  SUBCASE("rank-1 pairs give a 1 x 1 identity") {
    Rng rng(29);
    const Matrix u = rng.unitary(2);
    const Matrix v = rng.unitary(2);
    const Matrix g = comultiplication_gram(CPMap::from_kraus({u}), CPMap::from_kraus({v}));
    REQUIRE(g.rows() == 1);
    CHECK(std::abs(g(0, 0) - cxd(1)) <= 1e-10);
  }

  SUBCASE("bit-flip pair: 4 x 4 projection of rank 2") {
    const Matrix g = comultiplication_gram(bit_flip_map(), bit_flip_map());
    REQUIRE(g.rows() == 4);
    CHECK((g * g - g).norm() <= 1e-7);
    CHECK((g - g.adjoint()).norm() <= 1e-10);
    // Products of {1, sigma_x} with itself span {1, sigma_x}: rank 2.
    const HermitianEig eig = hermitian_eig(0.5 * (g + g.adjoint()));
    int rank = 0;
    for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k)
      if (eig.eigenvalues(k) > 0.5) ++rank;
    CHECK(rank == 2);
    CHECK(g.trace().real() == doctest::Approx(2.0).epsilon(1e-8));
  }

  SUBCASE("random pairs: projection law, trace = composed rank, span property") {
    Rng rng(30);
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::Index d = 2 + trial % 2;
      const CPMap p1 = rng.cp_map(d, 2);
      const CPMap p2 = rng.cp_map(d, 2);
      const Matrix g = comultiplication_gram(p1, p2);
      CHECK((g * g - g).norm() <= 1e-7);
      CHECK((g - g.adjoint()).norm() <= 1e-10);

      const MetricOperatorSpace s12 = metric_operator_space(compose(p1, p2));
      CHECK(std::abs(g.trace().real() - static_cast<double>(s12.rank())) <= 0.01);

      // Span property: the product vectors span the composed space.
      const MetricOperatorSpace s1 = metric_operator_space(p1);
      const MetricOperatorSpace s2 = metric_operator_space(p2);
      Matrix stacked(d * d, s1.rank() * s2.rank());
      Eigen::Index col = 0;
      for (const Matrix& e : s1.basis())
        for (const Matrix& f : s2.basis()) stacked.col(col++) = vec(e * f);
      Eigen::JacobiSVD<Matrix> svd(stacked);
      int rank = 0;
      for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
        if (svd.singularValues()(k) > 1e-8 * svd.singularValues()(0)) ++rank;
      CHECK(rank == s12.rank());
    }
  }
}

TEST_CASE("comultiplication isometry satisfies the Stinespring identities") {
  SUBCASE("identity map gives the identity isometry up to phase") {
    const Matrix v = comultiplication_isometry_map(CPMap::identity(2));
    REQUIRE(v.rows() == 2);
    CHECK((v.adjoint() * v - Matrix::Identity(2, 2)).norm() <= 1e-12);
  }

  SUBCASE("unital maps give isometries") {
    const CPMap flip = bit_flip_map();
    const Matrix v = comultiplication_isometry_map(flip);
    REQUIRE(v.rows() == 4);
    CHECK((v.adjoint() * v - Matrix::Identity(2, 2)).norm() <= 1e-9);
  }

  SUBCASE("V^* (1 (x) x) V = P(x) on the Pauli basis") {
    Rng rng(31);
    const CPMap p = rng.cp_map(2, 2);
    const Matrix v = comultiplication_isometry_map(p);
    const Eigen::Index r = v.rows() / 2;
    CHECK((v.adjoint() * v - p.apply(Matrix::Identity(2, 2))).norm() <= 1e-9);
    for (const Matrix& x : {Matrix(Matrix::Identity(2, 2)), pauli_x(), pauli_y(), pauli_z()}) {
      const Matrix lifted = kron(Matrix::Identity(r, r), x);
      CHECK((v.adjoint() * lifted * v - p.apply(x)).norm() <= 1e-9);
    }
  }
}

TEST_CASE("endo_intertwiners solves the intertwining equation for endomorphisms") {
  SUBCASE("identity map: the scalar line") {
    const auto basis = endo_intertwiners(CPMap::identity(2));
    REQUIRE(basis.size() == 1);
    const Matrix t = basis[0];
    CHECK((t - t(0, 0) * Matrix::Identity(2, 2)).norm() <= 1e-9);
    CHECK(std::abs((t.adjoint() * t)(0, 0).real() - 1.0) <= 1e-9);
  }

  SUBCASE("unitary conjugation: the line through the unitary") {
    Rng rng(32);
    const Matrix u = rng.unitary(2);
    const auto basis = endo_intertwiners(CPMap::from_kraus({u}));
    REQUIRE(basis.size() == 1);
    const cxd overlap = (basis[0].adjoint() * u).trace() / 2.0;
    CHECK(std::abs(std::abs(overlap) - 1.0) <= 1e-9);
  }

  SUBCASE("intertwiner and minimal Kraus basis span the same line") {
    const CPMap conj_x = CPMap::from_kraus({pauli_x()});
    const auto ints = endo_intertwiners(conj_x);
    const MetricOperatorSpace mos = metric_operator_space(conj_x);
    REQUIRE(ints.size() == 1);
    REQUIRE(mos.rank() == 1);
    const cxd overlap = (ints[0].adjoint() * mos.basis()[0]).trace() / 2.0;
    CHECK(std::abs(std::abs(overlap) - 1.0) <= 1e-9);
  }

  SUBCASE("non-multiplicative maps are rejected") {
    CHECK_THROWS_AS(endo_intertwiners(bit_flip_map()), error);
  }

  SUBCASE("intertwiner gram equals the mos gram for multiplicative maps") {
    Rng rng(33);
    const Matrix u = rng.unitary(3);
    const CPMap p = CPMap::from_kraus({u});
    const auto ints = endo_intertwiners(p);
    const MetricOperatorSpace mos = metric_operator_space(p);
    REQUIRE(ints.size() == 1);
    const Matrix prod = ints[0].adjoint() * ints[0];
    const cxd scalar = prod.trace() / 3.0;
    CHECK((prod - scalar * Matrix::Identity(3, 3)).norm() <= 1e-9);
    CHECK(std::abs(scalar - mos.inner(ints[0], ints[0])) <= 1e-9);
  }
}

TEST_CASE("from_choi round-trips the representation") {
  Rng rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    const CPMap p = rng.cp_map(2, 2);
    const CPMap q = CPMap::from_choi(p.choi());
    const Matrix x = rng.complex_matrix(2, 2);
    CHECK((p.apply(x) - q.apply(x)).norm() <= 1e-10 * (1.0 + x.norm()));
  }
  Matrix not_psd = Matrix::Identity(4, 4);
  not_psd(0, 0) = -1.0;
  CHECK_THROWS_AS(CPMap::from_choi(not_psd), error);
}
