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

#include "mosgroup/runner.hpp"

#include "mosgroup/index.hpp"

namespace mosgroup {

namespace {

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CPSemigroup identity_semigroup(Eigen::Index d = 2) {
  GKSGenerator g;
  g.dim = d;
  g.hamiltonian = Matrix::Zero(d, d);
  return CPSemigroup(std::move(g), "identity");
}

CPSemigroup sigma_x_semigroup() {
  GKSGenerator g;
  g.dim = 2;
  g.hamiltonian = Matrix::Zero(2, 2);
  g.noise_ops = {pauli_x()};
  return CPSemigroup(std::move(g), "noise-x");
}

CPSemigroup sigma_z_unitary_semigroup() {
  GKSGenerator g;
  g.dim = 2;
  g.hamiltonian = pauli_z();
  return CPSemigroup(std::move(g), "unitary-z");
}

class Suite {
 public:
  Suite(json& sink, std::string name) : sink_(sink), name_(std::move(name)) {}

  ~Suite() {
    json entry;
    entry["name"] = name_;
    entry["passed"] = passed_;
    entry["failed"] = failed_;
    entry["failures"] = failures_;
    sink_["suites"].push_back(std::move(entry));
    sink_["total_passed"] = sink_["total_passed"].get<int>() + passed_;
    sink_["total_failed"] = sink_["total_failed"].get<int>() + failed_;
  }

  void check(const std::string& what, bool ok) {
    if (ok) {
      ++passed_;
    } else {
      ++failed_;
      failures_.push_back(what);
    }
  }

  void check_close(const std::string& what, double value, double expected, double tol) {
    check(what + " (" + std::to_string(value) + " vs " + std::to_string(expected) + ")",
          std::abs(value - expected) <= tol);
  }

 private:
  json& sink_;
  std::string name_;
  int passed_ = 0;
  int failed_ = 0;
  std::vector<std::string> failures_;
};

void suite_numkernel(json& sink) {
  Suite s(sink, "numkernel");
  Matrix a(2, 2);
  a << cxd(1, 2), cxd(3, -1), cxd(0, 4), cxd(-2, 0);
  s.check("vec/unvec round-trip", (unvec(vec(a)) - a).norm() == 0.0);
  s.check_close("trace inner product", std::real(cxd(vec(pauli_x()).adjoint() * vec(pauli_x()))),
                2.0, 1e-14);
  s.check("kron identity", (kron(Matrix::Identity(1, 1), a) - a).norm() == 0.0);
  const HermitianEig eig = hermitian_eig(pauli_x());
  s.check_close("pauli-x eigenvalues", eig.eigenvalues(0), 1.0, 1e-12);
  const Matrix recon = eig.eigenvectors * eig.eigenvalues.asDiagonal().toDenseMatrix().cast<cxd>() *
                       eig.eigenvectors.adjoint();
  s.check("eig reconstruction", (recon - pauli_x().cast<cxd>()).norm() <= 1e-10 * 3);
  s.check("exp(0) = 1", (matrix_exp(Matrix::Zero(3, 3)) - Matrix::Identity(3, 3)).norm() <= 1e-14);
  Matrix diag2 = Matrix::Zero(2, 2);
  diag2(0, 0) = 2.0;
  const auto pinv = psd_pseudoinverse(diag2, 1e-6);
  s.check("pinv rank", pinv.rank == 1);
  s.check_close("pinv value", pinv.pinv(0, 0).real(), 0.5, 1e-14);
}

void suite_cpmaps(json& sink) {
  Suite s(sink, "cpmaps");
  const double r = 1.0 / std::sqrt(2.0);
  const CPMap flip = CPMap::from_kraus({r * Matrix::Identity(2, 2), r * pauli_x()});
  s.check("bit-flip kills sigma_z", flip.apply(pauli_z()).norm() <= 1e-12);
  const MetricOperatorSpace mos = metric_operator_space(flip);
  s.check("bit-flip space rank 2", mos.rank() == 2);
  s.check("sigma_z not a member", !mos.member(pauli_z()).member);
  const auto m1 = mos.member(Matrix::Identity(2, 2));
  s.check("identity is a member", m1.member);
  const OrderCertificate cert = cp_leq(omega(mos.basis()[0]), flip);
  s.check("minimal Kraus element sits below the map", cert.verdict);
  const Matrix gram = comultiplication_gram(flip, flip);
  s.check("comultiplication gram idempotent", (gram * gram - gram).norm() <= 1e-7);
  s.check_close("comultiplication gram trace", gram.trace().real(), 2.0, 1e-8);
  const Matrix v = comultiplication_isometry_map(flip);
  s.check("stinespring V*V = P(1)",
          (v.adjoint() * v - flip.apply(Matrix::Identity(2, 2))).norm() <= 1e-9);
  const CPMap conj_x = CPMap::from_kraus({pauli_x()});
  const auto ints = endo_intertwiners(conj_x);
  s.check("conjugation intertwiner is one line", ints.size() == 1);
}

void suite_semigroups(json& sink) {
  Suite s(sink, "semigroups");
  const CPSemigroup p = sigma_x_semigroup();
  s.check("P_0 is the identity map",
          (p.evolve(0.0).choi() - CPMap::identity(2).choi()).norm() <= 1e-12);
  const Matrix expected = std::exp(-2.0 * 0.7) * pauli_z();
  s.check("noise-x sends sigma_z to exp(-2t) sigma_z",
          (p.evolve(0.7).apply(pauli_z()) - expected).norm() <= 1e-9);
  const Matrix lhs = p.evolve(0.8).choi();
  const Matrix rhs = compose(p.evolve(0.5), p.evolve(0.3)).choi();
  s.check("semigroup law", (lhs - rhs).norm() <= 1e-8 * (1.0 + lhs.norm()));
  s.check("unitality", is_unital(p, {0.25, 0.5, 1.0}));
  s.check("Choi PSD along the grid", is_psd(p.evolve(0.6).choi()).psd);
  const CPSemigroup pq = tensor(p, identity_semigroup());
  const Matrix x = pauli_z();
  const Matrix y = pauli_x();
  const Matrix t_lhs = pq.evolve(0.3).apply(kron(x, y));
  const Matrix t_rhs = kron(p.evolve(0.3).apply(x), y);
  s.check("tensor acts factorwise", (t_lhs - t_rhs).norm() <= 1e-8);
}

void suite_units(json& sink) {
  Suite s(sink, "units");
  const CPSemigroup id2 = identity_semigroup();
  const auto grid = default_unit_grid();
  const auto v0 = verify_unit(UnitCandidate::make(Matrix::Zero(2, 2), "b0"), id2, grid);
  s.check("b = 0 verifies on the identity semigroup", v0.verified);
  s.check_close("b = 0 has zero exponent", v0.minimal_k.value_or(1.0), 0.0, 1e-5);
  const auto v1 = verify_unit(UnitCandidate::make(0.75 * Matrix::Identity(2, 2), "b1"), id2, grid);
  s.check_close("scalar exponent is 2c", v1.minimal_k.value_or(0.0), 1.5, 1e-5);

  const CPSemigroup px = sigma_x_semigroup();
  const auto vx = verify_unit(
      UnitCandidate::make(-Matrix::Identity(2, 2) + pauli_x(), "x"), px, grid);
  s.check("-1 + sigma_x verifies on the noise semigroup", vx.verified);
  const Discovery found = discover_units(px, 64, 42);
  s.check("noise semigroup has at least two units", found.units.size() >= 2);
  const Discovery again = discover_units(px, 64, 42);
  s.check("discovery is deterministic", again.units.size() == found.units.size());
}

void suite_covariance(json& sink) {
  Suite s(sink, "covariance");
  const CPSemigroup id2 = identity_semigroup();
  const UnitCandidate a = UnitCandidate::make(Matrix::Zero(2, 2), "a");
  const UnitCandidate c = UnitCandidate::make(Matrix::Identity(2, 2), "c");
  const cxd cov = covariance(a, c, id2);
  s.check_close("scalar covariance a + conj(c)", std::abs(cov - cxd(1.0, 0.0)), 0.0, 1e-6);

  const CPSemigroup px = sigma_x_semigroup();
  const UnitCandidate s1 = UnitCandidate::make(-Matrix::Identity(2, 2), "s1");
  const UnitCandidate s2 = UnitCandidate::make(-Matrix::Identity(2, 2) + pauli_x(), "s2");
  MosCache cache(px);
  const cxd net = covariance(s1, s2, px, kDefaultDepthMax, kDefaultRefineTol, &cache);
  const cxd oracle = generator_covariance_oracle(s1, s2, px, &cache);
  s.check_close("net limit agrees with the derivative oracle", std::abs(net - oracle), 0.0, 1e-4);

  const FamilyRefinement fam = family_refine({s1, s2}, px, 1.0, 10, 1e-9, &cache);
  bool monotone = true;
  for (std::size_t m = 1; m < fam.net.size(); ++m) {
    const Matrix diff = fam.net[m] - fam.net[m - 1];
    if (!is_psd(diff, 1e-8).psd) monotone = false;
  }
  s.check("dyadic net is monotone", monotone);
  const auto dev = check_deviation_bound(s1, s2, px, 1.0, Partition::dyadic(1.0, 3));
  s.check("deviation bound holds", dev.holds);
  const auto small = check_small_time_limit(s1, s2, px);
  s.check("small-time limit reaches 1", small.holds);
}

void suite_index(json& sink) {
  Suite s(sink, "index");
  const CPSemigroup id2 = identity_semigroup();
  std::vector<UnitCandidate> scalars;
  scalars.push_back(UnitCandidate::make(Matrix::Zero(2, 2), "s0"));
  scalars.push_back(UnitCandidate::make(0.5 * Matrix::Identity(2, 2), "s1"));
  const IndexReport scalar_report = index_lower_bound(scalars, id2);
  s.check("scalar family has zero-dimensional kernel space", scalar_report.index_lower_bound == 0);

  const CPSemigroup px = sigma_x_semigroup();
  std::vector<UnitCandidate> units;
  units.push_back(UnitCandidate::make(-Matrix::Identity(2, 2), "n0"));
  units.push_back(UnitCandidate::make(-Matrix::Identity(2, 2) + pauli_x(), "n1"));
  const IndexReport report = index_lower_bound(units, px);
  s.check("noise-x family gives index >= 1", report.index_lower_bound >= 1);
  s.check("kernel is conditionally positive definite", report.cpd_margin >= -1e-7);
  const IndexReport base0 = index_lower_bound(units, px, kDefaultRankTol, kDefaultDepthMax,
                                              kDefaultRefineTol, nullptr, 0);
  s.check("base-point independence", base0.index_lower_bound == report.index_lower_bound);

  const AdditivityReport add = additivity_check(id2, px, scalars, units);
  s.check("tensor kernel additivity", add.product_kernel_ok);
  s.check("tensor bound consistency", add.lhs == add.rhs);
}

void suite_dilation(json& sink) {
  Suite s(sink, "dilation");
  const CPSemigroup pz = sigma_z_unitary_semigroup();
  std::vector<UnitCandidate> units;
  units.push_back(UnitCandidate::make(cxd(0, 1) * pauli_z(), "h"));
  units.push_back(UnitCandidate::make(cxd(0, 1) * pauli_z() - 0.5 * Matrix::Identity(2, 2), "h-"));
  const DilationCheckReport r = trivial_dilation_check(pz, units);
  s.check("automorphism semigroup passes the dilation check", r.passed);
  bool rejected = false;
  try {
    trivial_dilation_check(sigma_x_semigroup(), units);
  } catch (const error& e) {
    rejected = e.code() == errc::not_multiplicative;
  }
  s.check("non-multiplicative semigroup is rejected", rejected);
}

}  // namespace

json run_selftest(int* failures) {
  json out;
  out["suites"] = json::array();
  out["total_passed"] = 0;
  out["total_failed"] = 0;
  suite_numkernel(out);
  suite_cpmaps(out);
  suite_semigroups(out);
  suite_units(out);
  suite_covariance(out);
  suite_index(out);
  suite_dilation(out);
  out["ok"] = out["total_failed"].get<int>() == 0;
  if (failures) *failures = out["total_failed"].get<int>();
  return out;
}

}  // namespace mosgroup
