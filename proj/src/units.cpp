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

#include "mosgroup/units.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>

#include "mosgroup/parallel.hpp"

namespace mosgroup {

namespace {

std::uint64_t time_key(double t) {
  std::uint64_t key = 0;
  std::memcpy(&key, &t, sizeof(key));
  return key;
}

double real_norm_sq(const MetricOperatorSpace& mos, const Matrix& t_val, double tol) {
  const cxd n = mos.inner(t_val, t_val, tol);
  return std::real(n);
}

}  // namespace

UnitCandidate UnitCandidate::make(Matrix b_in, std::string label) {
  if (b_in.rows() != b_in.cols() || b_in.rows() < 1) {
    throw error(errc::invalid_argument, "UnitCandidate: generator must be square");
  }
  if (!all_finite(b_in)) {
    throw error(errc::invalid_argument, "UnitCandidate: generator has non-finite entries");
  }
  UnitCandidate u;
  u.dim = b_in.rows();
  u.b = std::move(b_in);
  u.label = std::move(label);
  return u;
}

Matrix UnitCandidate::value(double t) const {
  if (t < 0.0) {
    throw error(errc::invalid_argument, "UnitCandidate::value: time must be nonnegative");
  }
  return matrix_exp(t * b);
}

UnitCandidate UnitCandidate::shifted(double c) const {
  UnitCandidate out = *this;
  out.b = b - (c / 2.0) * Matrix::Identity(dim, dim);
  out.k.reset();
  return out;
}

MosCache::MosCache(const CPSemigroup& p, double rank_tol) : p_(p), rank_tol_(rank_tol) {}

const MetricOperatorSpace& MosCache::at(double t) {
  const std::uint64_t key = time_key(t);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = spaces_.find(key);
    if (it != spaces_.end()) return *it->second;
  }
  auto space = std::make_shared<const MetricOperatorSpace>(p_.evolve(t), rank_tol_);
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = spaces_.emplace(key, std::move(space));
  return *it->second;
}

std::vector<double> default_unit_grid() {
  std::vector<double> grid;
  for (int m = 0; m <= 10; ++m) grid.push_back(std::ldexp(1.0, -m));
  grid.push_back(2.0);
  std::sort(grid.begin(), grid.end());
  return grid;
}

UnitVerification verify_unit(const UnitCandidate& u, const CPSemigroup& p,
                             const std::vector<double>& t_grid, double tol, MosCache* cache) {
  if (t_grid.empty()) {
    throw error(errc::invalid_argument, "verify_unit: empty time grid");
  }
  for (const double t : t_grid) {
    if (t <= 0.0) throw error(errc::invalid_argument, "verify_unit: grid times must be positive");
  }
  if (u.dim != p.dim()) {
    throw error(errc::invalid_argument, "verify_unit: dimension mismatch");
  }

  MosCache local(p);
  MosCache& mos = cache ? *cache : local;

  UnitVerification out;
  out.grid = t_grid;

  std::vector<double> rates(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    const Matrix t_val = u.value(t);
    const auto membership = mos.at(t).member(t_val, tol);
    if (!membership.member) {
      out.reason = "membership failure at t = " + std::to_string(t) +
                   " (residual " + std::to_string(membership.residual) + ")";
      return out;
    }
    rates[i] = std::log(real_norm_sq(mos.at(t), t_val, tol)) / t;
  }

  // Bisection of the scale-invariant growth criterion <T_t,T_t>^{1/t} <= e^k.
  auto holds_at = [&](double k) {
    return std::all_of(rates.begin(), rates.end(), [&](double r) { return r <= k; });
  };
  if (!holds_at(kGrowthBracket)) {
    out.reason = "growth exceeds the exponent bracket";
    return out;
  }
  double lo = -kGrowthBracket;
  double hi = kGrowthBracket;
  if (holds_at(lo)) {
    hi = lo;  // clamped at the lower bracket edge
  } else {
    while (hi - lo > kGrowthBisectTol) {
      const double mid = 0.5 * (lo + hi);
      (holds_at(mid) ? hi : lo) = mid;
    }
  }
  out.minimal_k = hi;
  out.verified = true;

  // Order-soundness margin: Choi(e^{kt} P_t - Omega_{T_t}) at k just above
  // minimal_k must be PSD; record the most negative scaled eigenvalue.
  const double k_probe = *out.minimal_k + 1e-6;
  double worst = 0.0;
  for (const double t : t_grid) {
    const Matrix t_val = u.value(t);
    const Matrix diff = p.evolve(t).scaled(std::exp(k_probe * t)).choi() - omega(t_val).choi();
    const HermitianEig eig = hermitian_eig(diff);
    const double spectral = eig.eigenvalues.size() ? eig.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
    const double margin = eig.eigenvalues.minCoeff() / std::max(1.0, spectral);
    worst = std::min(worst, margin);
  }
  out.worst_margin = worst;
  return out;
}

cxd unit_inner(const UnitCandidate& s, const UnitCandidate& u, const CPSemigroup& p, double t,
               MosCache* cache) {
  if (t <= 0.0) {
    throw error(errc::invalid_argument, "unit_inner: time must be positive");
  }
  MosCache local(p);
  MosCache& mos = cache ? *cache : local;
  return mos.at(t).inner(s.value(t), u.value(t));
}

double normalizing_exponent(const UnitCandidate& u, const CPSemigroup& p,
                            const std::vector<double>& deltas, MosCache* cache) {
  if (deltas.empty()) {
    throw error(errc::invalid_argument, "normalizing_exponent: empty increment set");
  }
  MosCache local(p);
  MosCache& mos = cache ? *cache : local;
  double kappa = -std::numeric_limits<double>::infinity();
  for (const double d : deltas) {
    if (d <= 0.0) throw error(errc::invalid_argument, "normalizing_exponent: increments must be positive");
    kappa = std::max(kappa, std::log(real_norm_sq(mos.at(d), u.value(d), kDefaultPsdTol)) / d);
  }
  return kappa;
}

namespace {

// Deterministic Gaussian samples independent of the standard library's
// distribution implementations.
struct Sampler {
  std::mt19937_64 engine;
  explicit Sampler(std::uint64_t seed) : engine(seed) {}

  double uniform() {
    return (engine() >> 11) * 0x1.0p-53;
  }

  double gauss() {
    double u1 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  cxd cgauss() {
    const double re = gauss();
    const double im = gauss();
    return cxd(re, im) / std::sqrt(2.0);
  }
};

void push_unique_direction(std::vector<Matrix>& dirs, const Matrix& d) {
  if (d.norm() <= 1e-12) return;
  for (const Matrix& existing : dirs) {
    if ((existing - d).norm() <= 1e-12) return;
  }
  dirs.push_back(d);
}

}  // namespace

Discovery discover_units(const CPSemigroup& p, int budget, std::uint64_t seed) {
  if (budget < 1) {
    throw error(errc::invalid_argument, "discover_units: budget must be at least 1");
  }
  const Eigen::Index d = p.dim();
  const Matrix id = Matrix::Identity(d, d);
  const cxd i_unit(0.0, 1.0);

  // Search directions: identity, the Hamiltonian direction i h, every noise
  // operator and its adjoint.  The Heisenberg-form conventions leave the
  // natural parametrization ambiguous, so both v and v^* are probed and
  // verification filters.
  std::vector<Matrix> directions;
  if (p.generator().hamiltonian.norm() > 1e-12) {
    push_unique_direction(directions, i_unit * p.generator().hamiltonian);
  }
  for (const Matrix& v : p.generator().noise_ops) {
    push_unique_direction(directions, v);
    push_unique_direction(directions, v.adjoint().eval());
  }

  std::vector<Matrix> candidates;
  auto push_candidate = [&](const Matrix& b) {
    if (static_cast<int>(candidates.size()) >= budget) return;
    for (const Matrix& existing : candidates) {
      if ((existing - b).norm() <= 1e-8) return;
    }
    candidates.push_back(b);
  };

  // Structured grid.
  const double mu_grid[] = {0.0, 1.0, -1.0, 0.5};
  const cxd coeff_grid[] = {cxd(1.0, 0.0), cxd(-1.0, 0.0), cxd(0.5, 0.0), cxd(0.0, 1.0)};
  for (const double mu : mu_grid) push_candidate(mu * id);
  for (const Matrix& dir : directions) {
    for (const cxd c : coeff_grid) {
      push_candidate(c * dir);
      push_candidate(-id + c * dir);
    }
  }
  if (directions.size() >= 2) {
    for (std::size_t a = 0; a < directions.size(); ++a)
      for (std::size_t b = a + 1; b < directions.size(); ++b) {
        push_candidate(directions[a] + directions[b]);
        push_candidate(directions[a] - directions[b]);
      }
  }

  // Random fill.
  Sampler sampler(seed);
  while (static_cast<int>(candidates.size()) < budget) {
    Matrix b = (0.5 * sampler.cgauss()) * id;
    for (const Matrix& dir : directions) b += (0.7 * sampler.cgauss()) * dir;
    push_candidate(b);
    if (directions.empty()) break;  // only scalars available; grid already has them
  }

  // Verify in parallel over a shared cache; merge in generation order.
  const std::vector<double> grid = default_unit_grid();
  MosCache cache(p);
  for (const double t : grid) cache.at(t);

  std::vector<UnitVerification> verdicts(candidates.size());
  parallel_for(candidates.size(), [&](std::size_t i) {
    verdicts[i] = verify_unit(UnitCandidate::make(candidates[i]), p, grid, kDefaultPsdTol, &cache);
  });

  Discovery out;
  out.candidates_tried = static_cast<int>(candidates.size());
  int counter = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!verdicts[i].verified) continue;
    char label[16];
    std::snprintf(label, sizeof(label), "u%03d", counter++);
    UnitCandidate u = UnitCandidate::make(candidates[i], label);
    u.k = verdicts[i].minimal_k;
    out.units.push_back(std::move(u));
    out.verifications.push_back(verdicts[i]);
  }
  // Labels are assigned in generation order, so the family is already
  // sorted; keep the explicit sort as the contract.
  std::vector<std::size_t> order(out.units.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return out.units[a].label < out.units[b].label; });
  Discovery sorted;
  sorted.candidates_tried = out.candidates_tried;
  for (const std::size_t i : order) {
    sorted.units.push_back(std::move(out.units[i]));
    sorted.verifications.push_back(std::move(out.verifications[i]));
  }
  return sorted;
}

}  // namespace mosgroup
