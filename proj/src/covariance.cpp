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

#include "mosgroup/covariance.hpp"

#include <algorithm>
#include <cmath>

namespace mosgroup {

namespace {

constexpr int kRichardsonLevels = 3;
constexpr double kDegenerateModulus = 1e-12;
constexpr double kBranchGuardTol = 1e-4;
constexpr double kDiagImagTol = 1e-8;

cxd pow_2m(cxd z, int m) {
  for (int i = 0; i < m; ++i) z *= z;
  return z;
}

// Next Richardson row from the previous one; error terms are powers of the
// increment, which halves per depth, so level l cancels the O(d^l) term.
std::vector<Matrix> richardson_row(const Matrix& raw, const std::vector<Matrix>& prev, int m) {
  std::vector<Matrix> row;
  row.push_back(raw);
  const int levels = std::min(m, kRichardsonLevels);
  for (int l = 1; l <= levels; ++l) {
    const double w = std::ldexp(1.0, l);  // 2^l
    row.push_back((w * row[l - 1] - prev[l - 1]) / (w - 1.0));
  }
  return row;
}

std::vector<double> dyadic_deltas(double t, int depth_max) {
  std::vector<double> deltas;
  for (int m = 0; m <= depth_max; ++m) deltas.push_back(t * std::ldexp(1.0, -m));
  return deltas;
}

Matrix inner_matrix(const std::vector<UnitCandidate>& units, MosCache& cache, double delta,
                    const std::vector<double>& kappa) {
  const auto n = static_cast<Eigen::Index>(units.size());
  const MetricOperatorSpace& mos = cache.at(delta);
  std::vector<Matrix> values(n);
  for (Eigen::Index i = 0; i < n; ++i) values[i] = units[i].value(delta);
  Matrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      g(i, j) = mos.inner(values[i], values[j]) *
                std::exp(-0.5 * (kappa[i] + kappa[j]) * delta);
  return g;
}

}  // namespace

Partition Partition::from_points(std::vector<double> points) {
  if (points.size() < 2) {
    throw error(errc::invalid_argument, "Partition: need at least the two endpoints");
  }
  if (points.front() != 0.0) {
    throw error(errc::invalid_argument, "Partition: first point must be 0");
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i] <= points[i - 1]) {
      throw error(errc::invalid_argument, "Partition: points must be strictly increasing");
    }
  }
  Partition part;
  part.t_max = points.back();
  part.points = std::move(points);
  return part;
}

Partition Partition::dyadic(double t_max, int depth) {
  if (t_max <= 0.0 || depth < 0) {
    throw error(errc::invalid_argument, "Partition::dyadic: bad arguments");
  }
  const int n = 1 << depth;
  std::vector<double> points;
  points.reserve(n + 1);
  for (int k = 0; k < n; ++k) points.push_back(t_max * k / n);
  points.push_back(t_max);
  return from_points(std::move(points));
}

std::vector<double> Partition::increments() const {
  std::vector<double> out;
  out.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) out.push_back(points[i] - points[i - 1]);
  return out;
}

cxd partition_product(const UnitCandidate& s, const UnitCandidate& u, const CPSemigroup& p,
                      const Partition& part, MosCache* cache) {
  MosCache local(p);
  MosCache& mos = cache ? *cache : local;
  cxd product(1.0, 0.0);
  for (const double delta : part.increments()) {
    product *= mos.at(delta).inner(s.value(delta), u.value(delta));
  }
  return product;
}

Matrix covariance_matrix(const UnitCandidate& s, const UnitCandidate& u, const CPSemigroup& p,
                         const Partition& part, MosCache* cache) {
  MosCache local(p);
  MosCache& mos = cache ? *cache : local;
  const std::vector<double> deltas = part.increments();
  const std::vector<UnitCandidate> units = {s, u};
  const std::vector<double> kappa = {normalizing_exponent(s, p, deltas, &mos),
                                     normalizing_exponent(u, p, deltas, &mos)};
  Matrix a = Matrix::Ones(2, 2);
  for (const double delta : deltas) {
    a = a.cwiseProduct(inner_matrix(units, mos, delta, kappa));
  }
  return a;
}

FamilyRefinement family_refine(const std::vector<UnitCandidate>& units, const CPSemigroup& p,
                               double t, int depth_max, double tol, MosCache* cache,
                               bool branch_guard, const std::vector<double>& extra_kappa_deltas) {
  if (units.empty()) {
    throw error(errc::invalid_argument, "family_refine: empty unit family");
  }
  if (t <= 0.0) {
    throw error(errc::invalid_argument, "family_refine: time must be positive");
  }
  if (depth_max < 1 || depth_max > 20) {
    throw error(errc::invalid_argument, "family_refine: depth_max out of range");
  }
  MosCache local(p);
  MosCache& mos = cache ? *cache : local;
  const auto n = static_cast<Eigen::Index>(units.size());

  std::vector<double> kappa_deltas = dyadic_deltas(t, depth_max);
  kappa_deltas.insert(kappa_deltas.end(), extra_kappa_deltas.begin(), extra_kappa_deltas.end());

  FamilyRefinement out;
  out.t = t;
  out.kappa.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.kappa[i] = normalizing_exponent(units[i], p, kappa_deltas, &mos);
  }

  std::vector<Matrix> prev_row;
  Matrix best_prev;
  Matrix best;
  for (int m = 0; m <= depth_max; ++m) {
    const double delta = t * std::ldexp(1.0, -m);
    const Matrix g = inner_matrix(units, mos, delta, out.kappa);
    Matrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) a(i, j) = pow_2m(g(i, j), m);
    out.net.push_back(a);

    const std::vector<Matrix> row = richardson_row(a, prev_row, m);
    best = row.back();
    if (m > 0) {
      out.residual = (best - best_prev).norm();
      if (out.residual < tol) {
        out.converged = true;
        out.refinement_depth = m - 1;
        break;
      }
    }
    best_prev = best;
    prev_row = row;
  }
  if (!out.converged) out.refinement_depth = depth_max;
  out.limit = best;

  out.exponents = Matrix(n, n);
  out.covariance = Matrix(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const cxd b = out.limit(i, j);
      if (std::abs(b) <= kDegenerateModulus) {
        throw error(errc::degenerate, "family_refine: net limit vanishes, exponent undefined");
      }
      cxd c = std::log(b) / t;
      if (i == j) {
        if (std::abs(c.imag()) > kDiagImagTol) {
          throw error(errc::inconsistency, "family_refine: diagonal exponent has imaginary part");
        }
        c = cxd(c.real(), 0.0);
      }
      out.exponents(i, j) = c;
      out.covariance(i, j) = c + cxd(0.5 * (out.kappa[i] + out.kappa[j]), 0.0);
    }

  if (branch_guard && out.converged) {
    const FamilyRefinement half =
        family_refine(units, p, t / 2.0, depth_max, tol, &mos, false, extra_kappa_deltas);
    if (half.converged) {
      const double drift = (out.covariance - half.covariance).cwiseAbs().maxCoeff();
      if (drift > kBranchGuardTol) {
        throw error(errc::inconsistency,
                    "family_refine: exponent inconsistent under halving (branch guard)");
      }
    }
  }
  return out;
}

CovarianceResult refine_to_limit(const UnitCandidate& s, const UnitCandidate& u,
                                 const CPSemigroup& p, double t, int depth_max, double tol,
                                 MosCache* cache) {
  const FamilyRefinement fam =
      family_refine({s, u}, p, t, depth_max, tol, cache, /*branch_guard=*/true);
  CovarianceResult out;
  out.t = t;
  out.B = fam.limit;
  out.exponents = fam.exponents;
  out.covariance = fam.covariance;
  out.kappa = fam.kappa;
  out.refinement_depth = fam.refinement_depth;
  out.residual = fam.residual;
  out.converged = fam.converged;
  return out;
}

cxd covariance(const UnitCandidate& s, const UnitCandidate& u, const CPSemigroup& p,
               int depth_max, double tol, MosCache* cache) {
  const CovarianceResult r = refine_to_limit(s, u, p, 1.0, depth_max, tol, cache);
  if (!r.converged) {
    throw error(errc::non_convergence,
                "covariance: refinement did not converge (residual " +
                    std::to_string(r.residual) + ")");
  }
  return r.covariance(0, 1);
}

cxd generator_covariance_oracle(const UnitCandidate& s, const UnitCandidate& u,
                                const CPSemigroup& p, MosCache* cache) {
  MosCache local(p);
  MosCache& mos = cache ? *cache : local;
  const double t0 = 1e-2;
  const auto quotient = [&](double t) {
    return (unit_inner(s, u, p, t, &mos) - cxd(1.0, 0.0)) / t;
  };
  const cxd d1 = quotient(t0);
  const cxd d2 = quotient(t0 / 2.0);
  const cxd d3 = quotient(t0 / 4.0);
  const cxd r1a = 2.0 * d2 - d1;
  const cxd r1b = 2.0 * d3 - d2;
  return (4.0 * r1b - r1a) / 3.0;
}

DeviationBoundCheck check_deviation_bound(const UnitCandidate& s, const UnitCandidate& u,
                                          const CPSemigroup& p, double t, const Partition& part,
                                          int depth_max, double tol, MosCache* cache) {
  if (std::abs(part.t_max - t) > 1e-12) {
    throw error(errc::invalid_argument, "check_deviation_bound: partition must cover [0, t]");
  }
  MosCache local(p);
  MosCache& mos = cache ? *cache : local;
  const FamilyRefinement fam = family_refine({s, u}, p, t, depth_max, tol, &mos,
                                             /*branch_guard=*/false, part.increments());
  const std::vector<UnitCandidate> units = {s, u};
  const Matrix g = inner_matrix(units, mos, t, fam.kappa);

  // The same normalization telescopes over any partition of [0, t].
  const cxd raw = partition_product(s, u, p, part, &mos);
  const cxd f_norm = raw * std::exp(-0.5 * (fam.kappa[0] + fam.kappa[1]) * t);

  DeviationBoundCheck out;
  out.lhs = std::norm(fam.limit(0, 1) - g(0, 1));
  out.partition_lhs = std::norm(f_norm - g(0, 1));
  out.rhs = (1.0 - g(0, 0).real()) * (1.0 - g(1, 1).real());
  out.holds = out.lhs <= out.rhs + 1e-8 && out.partition_lhs <= out.rhs + 1e-8;
  return out;
}

SmallTimeLimitCheck check_small_time_limit(const UnitCandidate& s, const UnitCandidate& u,
                                           const CPSemigroup& p, MosCache* cache) {
  MosCache local(p);
  MosCache& mos = cache ? *cache : local;
  std::vector<double> ts;
  for (int m = 4; m <= 10; ++m) ts.push_back(std::ldexp(1.0, -m));
  const std::vector<double> kappa = {normalizing_exponent(s, p, ts, &mos),
                                     normalizing_exponent(u, p, ts, &mos)};
  const std::vector<UnitCandidate> units = {s, u};
  SmallTimeLimitCheck out;
  out.holds = true;
  double prev = std::numeric_limits<double>::infinity();
  for (const double t : ts) {
    const Matrix g = inner_matrix(units, mos, t, kappa);
    const double dev = std::abs(g(0, 1) - cxd(1.0, 0.0));
    out.deviations.push_back(dev);
    if (dev > prev + 1e-12) out.holds = false;
    prev = dev;
  }
  if (out.deviations.back() >= 1e-3) out.holds = false;
  return out;
}

Matrix split_refined_product(const UnitCandidate& s, const UnitCandidate& u, const CPSemigroup& p,
                             double t, double split, int depth_max, double tol, MosCache* cache) {
  if (!(split > 0.0 && split < t)) {
    throw error(errc::invalid_argument, "split_refined_product: split must be interior");
  }
  MosCache local(p);
  MosCache& mos = cache ? *cache : local;
  const std::vector<UnitCandidate> units = {s, u};
  const std::vector<double> kappa = {0.0, 0.0};  // raw products

  std::vector<Matrix> prev_row;
  Matrix best_prev;
  Matrix best;
  bool converged = false;
  for (int m = 0; m <= depth_max; ++m) {
    const Matrix left = inner_matrix(units, mos, split * std::ldexp(1.0, -m), kappa);
    const Matrix right = inner_matrix(units, mos, (t - split) * std::ldexp(1.0, -m), kappa);
    Matrix a(2, 2);
    for (Eigen::Index i = 0; i < 2; ++i)
      for (Eigen::Index j = 0; j < 2; ++j)
        a(i, j) = pow_2m(left(i, j), m) * pow_2m(right(i, j), m);

    const std::vector<Matrix> row = richardson_row(a, prev_row, m);
    best = row.back();
    if (m > 0 && (best - best_prev).norm() < tol) {
      converged = true;
      break;
    }
    best_prev = best;
    prev_row = row;
  }
  if (!converged) {
    throw error(errc::non_convergence, "split_refined_product: no convergence at depth_max");
  }
  return best;
}

}  // namespace mosgroup
