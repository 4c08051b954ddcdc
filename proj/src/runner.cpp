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

#include <chrono>
#include <set>
#include <sstream>

#include "mosgroup/index.hpp"

namespace mosgroup {

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point start) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

RunStatus status_of(errc code) {
  switch (code) {
    case errc::parse:
    case errc::invalid_argument:
    case errc::dimension_guard:
    case errc::not_hermitian:
    case errc::not_psd:
      return RunStatus::malformed_input;
    default:
      return RunStatus::verification_failure;
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string format_complex(const cxd& z) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

/// Minimal aligned-column text table.
class TextTable {
 public:
  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

  std::string render() const {
    std::vector<std::size_t> widths;
    for (const auto& r : rows_) {
      if (widths.size() < r.size()) widths.resize(r.size(), 0);
      for (std::size_t c = 0; c < r.size(); ++c) widths[c] = std::max(widths[c], r[c].size());
    }
    std::ostringstream out;
    for (const auto& r : rows_) {
      for (std::size_t c = 0; c < r.size(); ++c) {
        out << r[c];
        if (c + 1 < r.size()) out << std::string(widths[c] - r[c].size() + 2, ' ');
      }
      out << '\n';
    }
    return out.str();
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

json verification_to_json(const UnitVerification& v, const std::string& label) {
  json out;
  out["label"] = label;
  out["verified"] = v.verified;
  if (v.minimal_k) out["minimal_k"] = *v.minimal_k;
  out["worst_margin"] = v.worst_margin;
  if (!v.reason.empty()) out["reason"] = v.reason;
  return out;
}

json index_report_to_json(const IndexReport& r) {
  json out;
  out["no_units"] = r.no_units;
  if (r.no_units) return out;
  out["units_used"] = r.units_used;
  out["base_index"] = r.base_index;
  out["c_matrix"] = matrix_to_json(r.c_matrix);
  out["gram"] = matrix_to_json(r.gram);
  out["eigenvalues"] = real_vector_to_json(r.eigenvalues);
  out["index_lower_bound"] = r.index_lower_bound;
  out["cpd_margin"] = r.cpd_margin;
  return out;
}

struct CommandOutcome {
  json results;
  std::string table;
  RunStatus status = RunStatus::ok;
  std::vector<std::string> diagnostics;
};

std::vector<UnitCandidate> document_units(const ProblemDocument& doc, const CPSemigroup& p,
                                          CommandOutcome& outcome, json& source) {
  if (!doc.unit_candidates.empty()) {
    source = "candidates";
    MosCache cache(p, doc.options.rank_tol);
    for (const auto& u : doc.unit_candidates) {
      const UnitVerification v = verify_unit(u, p, doc.options.t_grid, doc.options.psd_tol, &cache);
      if (!v.verified) {
        throw error(errc::inconsistency,
                    "unit candidate '" + u.label + "' failed verification: " + v.reason);
      }
    }
    return doc.unit_candidates;
  }
  source = "discovered";
  const Discovery found = discover_units(p, doc.options.budget, doc.options.seed);
  outcome.diagnostics.push_back("units discovered: " + std::to_string(found.units.size()) +
                                " of " + std::to_string(found.candidates_tried) + " candidates");
  return found.units;
}

CommandOutcome cmd_mos(const ProblemDocument& doc, const RunOverrides& overrides) {
  CommandOutcome out;
  const double t = overrides.t.value_or(1.0);
  const CPSemigroup p = doc.semigroup();
  const CPMap pt = p.evolve(t);
  const MetricOperatorSpace mos = metric_operator_space(pt, doc.options.rank_tol);

  const HermitianEig eig = hermitian_eig(pt.choi());
  double gram_residual = 0.0;
  for (Eigen::Index i = 0; i < mos.rank(); ++i)
    for (Eigen::Index j = 0; j < mos.rank(); ++j) {
      const cxd g = mos.inner(mos.basis()[i], mos.basis()[j]);
      gram_residual = std::max(gram_residual, std::abs(g - (i == j ? cxd(1) : cxd(0))));
    }
  Matrix recon = Matrix::Zero(doc.dim * doc.dim, doc.dim * doc.dim);
  for (const Matrix& e : mos.basis()) recon += vec(e) * vec(e).adjoint();
  const double reconstruction_residual = (recon - pt.choi()).norm();

  out.results["t"] = t;
  out.results["rank"] = mos.rank();
  out.results["choi_eigenvalues"] = real_vector_to_json(eig.eigenvalues);
  json basis = json::array();
  for (const Matrix& e : mos.basis()) basis.push_back(matrix_to_json(e));
  out.results["basis"] = std::move(basis);
  out.results["gram_residual"] = gram_residual;
  out.results["reconstruction_residual"] = reconstruction_residual;

  TextTable table;
  table.row({"metric operator space", "t = " + format_double(t)});
  table.row({"rank", std::to_string(mos.rank())});
  table.row({"gram residual", format_double(gram_residual)});
  table.row({"reconstruction residual", format_double(reconstruction_residual)});
  out.table = table.render();
  return out;
}

CommandOutcome cmd_verify_unit(const ProblemDocument& doc) {
  if (doc.unit_candidates.empty()) {
    throw error(errc::parse, "document error at /unit_candidates: verify-unit needs candidates");
  }
  CommandOutcome out;
  const CPSemigroup p = doc.semigroup();
  MosCache cache(p, doc.options.rank_tol);
  bool all = true;
  json list = json::array();
  TextTable table;
  table.row({"label", "verified", "minimal_k", "worst_margin"});
  for (const auto& u : doc.unit_candidates) {
    const UnitVerification v = verify_unit(u, p, doc.options.t_grid, doc.options.psd_tol, &cache);
    all = all && v.verified;
    list.push_back(verification_to_json(v, u.label));
    table.row({u.label, v.verified ? "yes" : "no",
               v.minimal_k ? format_double(*v.minimal_k) : "-", format_double(v.worst_margin)});
  }
  out.results["grid"] = doc.options.t_grid;
  out.results["candidates"] = std::move(list);
  out.results["all_verified"] = all;
  out.status = all ? RunStatus::ok : RunStatus::verification_failure;
  out.table = table.render();
  return out;
}

CommandOutcome cmd_discover_units(const ProblemDocument& doc, const RunOverrides& overrides) {
  CommandOutcome out;
  const CPSemigroup p = doc.semigroup();
  const std::uint64_t seed = overrides.seed.value_or(doc.options.seed);
  const Discovery found = discover_units(p, doc.options.budget, seed);

  out.results["seed"] = seed;
  out.results["budget"] = doc.options.budget;
  out.results["candidates_tried"] = found.candidates_tried;
  out.results["count"] = found.units.size();
  out.results["no_units"] = found.units.empty();
  json list = json::array();
  TextTable table;
  table.row({"label", "minimal_k"});
  for (std::size_t i = 0; i < found.units.size(); ++i) {
    json entry;
    entry["label"] = found.units[i].label;
    entry["b"] = matrix_to_json(found.units[i].b);
    if (found.units[i].k) entry["minimal_k"] = *found.units[i].k;
    entry["worst_margin"] = found.verifications[i].worst_margin;
    list.push_back(std::move(entry));
    table.row({found.units[i].label,
               found.units[i].k ? format_double(*found.units[i].k) : "-"});
  }
  out.results["units"] = std::move(list);
  if (found.units.empty()) {
    out.diagnostics.push_back("no units found in search family (budget " +
                              std::to_string(doc.options.budget) + ")");
  }
  out.table = table.render();
  return out;
}

CommandOutcome cmd_covariance(const ProblemDocument& doc, const RunOverrides& overrides) {
  CommandOutcome out;
  const CPSemigroup p = doc.semigroup();
  json source;
  std::vector<UnitCandidate> units = document_units(doc, p, out, source);
  if (units.empty()) {
    out.results["no_units"] = true;
    out.results["source"] = source;
    out.table = "no units available\n";
    return out;
  }
  const int depth = overrides.depth.value_or(doc.options.depth_max);
  MosCache cache(p, doc.options.rank_tol);
  const Partition check_partition = Partition::dyadic(1.0, 3);

  bool all_pass = true;
  json pairs = json::array();
  TextTable table;
  table.row({"pair", "c_P", "oracle gap", "depth", "converged"});
  for (std::size_t i = 0; i < units.size(); ++i) {
    for (std::size_t j = i; j < units.size(); ++j) {
      const UnitCandidate& s = units[i];
      const UnitCandidate& u = units[j];
      const CovarianceResult r = refine_to_limit(s, u, p, 1.0, depth, kDefaultRefineTol, &cache);
      const cxd oracle = generator_covariance_oracle(s, u, p, &cache);
      const double oracle_gap = std::abs(r.covariance(0, 1) - oracle);
      const DeviationBoundCheck dev =
          check_deviation_bound(s, u, p, 1.0, check_partition, depth, kDefaultRefineTol, &cache);
      const SmallTimeLimitCheck small = check_small_time_limit(s, u, p, &cache);

      json entry;
      entry["s"] = s.label;
      entry["u"] = u.label;
      entry["converged"] = r.converged;
      entry["refinement_depth"] = r.refinement_depth;
      entry["residual"] = r.residual;
      entry["B"] = matrix_to_json(r.B);
      entry["exponents"] = matrix_to_json(r.exponents);
      entry["covariance"] = matrix_to_json(r.covariance);
      entry["kappa"] = r.kappa;
      entry["c"] = complex_to_json(r.covariance(0, 1));
      entry["covariance_oracle"] = complex_to_json(oracle);
      entry["oracle_gap"] = oracle_gap;
      entry["deviation_bound"] = {{"lhs", dev.lhs},
                                  {"partition_lhs", dev.partition_lhs},
                                  {"rhs", dev.rhs},
                                  {"holds", dev.holds}};
      entry["small_time_limit"] = {{"deviations", small.deviations}, {"holds", small.holds}};
      pairs.push_back(std::move(entry));

      const bool pass = r.converged && dev.holds && small.holds && oracle_gap <= 1e-4;
      all_pass = all_pass && pass;
      table.row({s.label + "," + u.label, format_complex(r.covariance(0, 1)),
                 format_double(oracle_gap), std::to_string(r.refinement_depth),
                 r.converged ? "yes" : "no"});
    }
  }
  out.results["source"] = source;
  out.results["t"] = 1.0;
  out.results["pairs"] = std::move(pairs);
  out.results["all_pass"] = all_pass;
  out.status = all_pass ? RunStatus::ok : RunStatus::verification_failure;
  out.table = table.render();
  return out;
}

CommandOutcome cmd_index(const ProblemDocument& doc, const RunOverrides& overrides) {
  CommandOutcome out;
  const CPSemigroup p = doc.semigroup();
  json source;
  std::vector<UnitCandidate> units = document_units(doc, p, out, source);
  const int depth = overrides.depth.value_or(doc.options.depth_max);

  IndexReport report;
  if (units.empty()) {
    report.no_units = true;
    out.diagnostics.push_back("no units found in search family; index undefined on this family");
  } else {
    report = index_lower_bound(units, p, doc.options.rank_tol, depth);
  }
  out.results = index_report_to_json(report);
  out.results["source"] = source;

  TextTable table;
  if (report.no_units) {
    table.row({"index", "no units found in search family"});
  } else {
    table.row({"index lower bound", std::to_string(report.index_lower_bound),
               "(from " + std::to_string(report.units_used.size()) + " units)"});
    table.row({"cpd margin", format_double(report.cpd_margin)});
    std::string eigs;
    for (Eigen::Index k = 0; k < report.eigenvalues.size(); ++k) {
      if (k) eigs += "  ";
      eigs += format_double(report.eigenvalues(k));
    }
    table.row({"gram eigenvalues", eigs});
  }
  out.table = table.render();
  return out;
}

CommandOutcome cmd_tensor_index(const ProblemDocument& doc, const ProblemDocument& other,
                                const RunOverrides& overrides) {
  CommandOutcome out;
  const CPSemigroup p = doc.semigroup();
  const CPSemigroup q = other.semigroup();
  json source_p, source_q;
  std::vector<UnitCandidate> units_p = document_units(doc, p, out, source_p);
  std::vector<UnitCandidate> units_q = document_units(other, q, out, source_q);
  if (units_p.empty() || units_q.empty()) {
    throw error(errc::inconsistency, "tensor-index: a factor has no units");
  }
  const int depth = overrides.depth.value_or(doc.options.depth_max);
  const AdditivityReport r =
      additivity_check(p, q, units_p, units_q, doc.options.rank_tol, depth);

  out.results["lhs"] = r.lhs;
  out.results["rhs"] = r.rhs;
  out.results["bound_p"] = r.bound_p;
  out.results["bound_q"] = r.bound_q;
  out.results["product_kernel_ok"] = r.product_kernel_ok;
  out.results["max_kernel_deviation"] = r.max_kernel_deviation;
  out.results["product_labels"] = r.product_labels;
  out.results["failed_product_units"] = r.failed_product_units;
  const bool pass = r.product_kernel_ok && r.lhs == r.rhs && r.failed_product_units.empty();
  out.status = pass ? RunStatus::ok : RunStatus::verification_failure;

  TextTable table;
  table.row({"product-family bound", std::to_string(r.lhs)});
  table.row({"component bound sum", std::to_string(r.rhs),
             "(" + std::to_string(r.bound_p) + " + " + std::to_string(r.bound_q) + ")"});
  table.row({"kernel additivity", r.product_kernel_ok ? "ok" : "VIOLATED",
             "max deviation " + format_double(r.max_kernel_deviation)});
  out.table = table.render();
  return out;
}

CommandOutcome cmd_dilation_check(const ProblemDocument& doc, const RunOverrides& overrides) {
  CommandOutcome out;
  const CPSemigroup p = doc.semigroup();
  json source;
  std::vector<UnitCandidate> units = document_units(doc, p, out, source);
  if (units.empty()) {
    throw error(errc::inconsistency, "dilation-check: no units available");
  }
  const int depth = overrides.depth.value_or(doc.options.depth_max);
  const DilationCheckReport r =
      trivial_dilation_check(p, units, doc.options.psd_tol, doc.options.rank_tol, depth);

  out.results["multiplicative"] = r.multiplicative;
  out.results["intertwiner_gram_deviation"] = r.intertwiner_gram_deviation;
  out.results["gram_spectrum_deviation"] = r.gram_spectrum_deviation;
  out.results["partition_independence"] = r.partition_independence;
  out.results["covariance_identity"] = r.covariance_identity;
  out.results["index_partition_route"] = r.index_partition_route;
  out.results["index_direct_route"] = r.index_direct_route;
  out.results["passed"] = r.passed;
  out.status = r.passed ? RunStatus::ok : RunStatus::verification_failure;

  TextTable table;
  table.row({"multiplicative", r.multiplicative ? "yes" : "no"});
  table.row({"gram spectrum deviation", format_double(r.gram_spectrum_deviation)});
  table.row({"partition independence", format_double(r.partition_independence)});
  table.row({"index (partition / direct)", std::to_string(r.index_partition_route) + " / " +
                                               std::to_string(r.index_direct_route)});
  table.row({"passed", r.passed ? "yes" : "no"});
  out.table = table.render();
  return out;
}

CommandOutcome cmd_selftest() {
  CommandOutcome out;
  int failures = 0;
  out.results = run_selftest(&failures);
  out.status = failures == 0 ? RunStatus::ok : RunStatus::verification_failure;
  TextTable table;
  table.row({"suite", "passed", "failed"});
  for (const auto& suite : out.results["suites"]) {
    table.row({suite["name"].get<std::string>(), std::to_string(suite["passed"].get<int>()),
               std::to_string(suite["failed"].get<int>())});
  }
  table.row({"total", std::to_string(out.results["total_passed"].get<int>()),
             std::to_string(out.results["total_failed"].get<int>())});
  out.table = table.render();
  return out;
}

}  // namespace

RunResult run_command(const std::string& command, const std::string& document_json,
                      const std::string& other_document_json, const RunOverrides& overrides) {
  const auto start = clock_type::now();
  RunResult result;
  result.report["command"] = command;

  try {
    static const std::set<std::string> known = {"mos",       "verify-unit",  "discover-units",
                                                "covariance", "index",        "tensor-index",
                                                "dilation-check", "selftest"};
    if (!known.count(command)) {
      throw error(errc::parse, "unknown command '" + command + "'");
    }

    std::optional<ProblemDocument> doc;
    std::optional<ProblemDocument> other;
    if (command != "selftest") {
      if (document_json.empty()) {
        throw error(errc::parse, "command '" + command + "' requires a document");
      }
      doc = parse_document(document_json);
      result.report["inputs_digest"] = doc->digest;
    } else {
      result.report["inputs_digest"] = fnv1a_hex("selftest");
    }
    if (command == "tensor-index") {
      if (other_document_json.empty()) {
        throw error(errc::parse, "tensor-index requires --other <document>");
      }
      other = parse_document(other_document_json);
      result.report["other_digest"] = other->digest;
    }
    const double parse_ms = ms_since(start);

    const auto analysis_start = clock_type::now();
    CommandOutcome outcome;
    if (command == "mos") outcome = cmd_mos(*doc, overrides);
    else if (command == "verify-unit") outcome = cmd_verify_unit(*doc);
    else if (command == "discover-units") outcome = cmd_discover_units(*doc, overrides);
    else if (command == "covariance") outcome = cmd_covariance(*doc, overrides);
    else if (command == "index") outcome = cmd_index(*doc, overrides);
    else if (command == "tensor-index") outcome = cmd_tensor_index(*doc, *other, overrides);
    else if (command == "dilation-check") outcome = cmd_dilation_check(*doc, overrides);
    else outcome = cmd_selftest();

    result.status = outcome.status;
    result.report["results"] = std::move(outcome.results);
    result.report["diagnostics"] = outcome.diagnostics;
    result.report["timings"] = {{"parse_ms", parse_ms},
                                {"analysis_ms", ms_since(analysis_start)},
                                {"total_ms", ms_since(start)}};
    result.table = std::move(outcome.table);
    if (result.status != RunStatus::ok) {
      result.error_message = "command reported a verification failure";
    }
  } catch (const error& e) {
    result.status = status_of(e.code());
    result.error_message = e.what();
    result.report["error"] = e.what();
    result.report["diagnostics"] = json::array({e.what()});
  } catch (const std::exception& e) {
    result.status = RunStatus::verification_failure;
    result.error_message = e.what();
    result.report["error"] = e.what();
    result.report["diagnostics"] = json::array({e.what()});
  }
  return result;
}

}  // namespace mosgroup
