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

#include "mosgroup/document.hpp"

#include <set>

namespace mosgroup {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw error(errc::parse, "document error at " + path + ": " + message);
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) fail(path + "/" + item.key(), "unknown field");
  }
}

}  // namespace

json complex_to_json(const cxd& z) {
  return json::array({z.real(), z.imag()});
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json real_vector_to_json(const RealVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Matrix matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = -1;
  Matrix m;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[r];
    const std::string row_path = path + "/" + std::to_string(r);
    if (!row.is_array() || row.empty()) fail(row_path, "expected a nonempty row array");
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
      m.resize(rows, cols);
    } else if (static_cast<Eigen::Index>(row.size()) != cols) {
      fail(row_path, "ragged matrix literal");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& entry = row[c];
      const std::string entry_path = row_path + "/" + std::to_string(c);
      if (!entry.is_array() || entry.size() != 2) fail(entry_path, "expected an [re, im] pair");
      m(r, c) = cxd(number_at(entry[0], entry_path + "/0"), number_at(entry[1], entry_path + "/1"));
    }
  }
  if (!all_finite(m)) fail(path, "matrix has non-finite entries");
  return m;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (const unsigned char ch : text) {
    hash ^= ch;
    hash *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

ProblemDocument parse_document(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw error(errc::parse, std::string("document is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("/", "expected a JSON object");
  check_keys(root, "", {"version", "dim", "label", "hamiltonian", "noise_ops", "decay",
                        "unit_candidates", "options"});

  ProblemDocument doc;
  doc.digest = fnv1a_hex(root.dump());

  if (!root.contains("version") || !root["version"].is_string()) {
    fail("/version", "expected the string \"mosgroup/1\"");
  }
  doc.version = root["version"].get<std::string>();
  if (doc.version != "mosgroup/1") fail("/version", "unsupported version '" + doc.version + "'");

  if (!root.contains("dim") || !root["dim"].is_number_integer()) {
    fail("/dim", "expected an integer");
  }
  const auto dim = root["dim"].get<long long>();
  if (dim < 1 || dim > kMaxDim) fail("/dim", "dimension must be between 1 and 8");
  doc.dim = static_cast<Eigen::Index>(dim);

  if (root.contains("label")) {
    if (!root["label"].is_string()) fail("/label", "expected a string");
    doc.label = root["label"].get<std::string>();
  }

  auto square = [&](const json& j, const std::string& path) {
    Matrix m = matrix_from_json(j, path);
    if (m.rows() != doc.dim || m.cols() != doc.dim) {
      fail(path, "expected a " + std::to_string(doc.dim) + " x " + std::to_string(doc.dim) +
                     " matrix");
    }
    return m;
  };

  doc.hamiltonian = root.contains("hamiltonian") ? square(root["hamiltonian"], "/hamiltonian")
                                                 : Matrix::Zero(doc.dim, doc.dim);
  if (root.contains("noise_ops")) {
    if (!root["noise_ops"].is_array()) fail("/noise_ops", "expected an array of matrices");
    for (std::size_t k = 0; k < root["noise_ops"].size(); ++k) {
      doc.noise_ops.push_back(square(root["noise_ops"][k], "/noise_ops/" + std::to_string(k)));
    }
  }
  if (root.contains("decay")) doc.decay = square(root["decay"], "/decay");

  if (root.contains("unit_candidates")) {
    if (!root["unit_candidates"].is_array()) {
      fail("/unit_candidates", "expected an array of {label, b} objects");
    }
    for (std::size_t k = 0; k < root["unit_candidates"].size(); ++k) {
      const json& entry = root["unit_candidates"][k];
      const std::string path = "/unit_candidates/" + std::to_string(k);
      if (!entry.is_object() || !entry.contains("b")) fail(path, "expected an object with 'b'");
      check_keys(entry, path, {"label", "b"});
      std::string label = "cand-" + std::to_string(k);
      if (entry.contains("label")) {
        if (!entry["label"].is_string()) fail(path + "/label", "expected a string");
        label = entry["label"].get<std::string>();
      }
      doc.unit_candidates.push_back(UnitCandidate::make(square(entry["b"], path + "/b"), label));
    }
  }

  doc.options.t_grid = default_unit_grid();
  if (root.contains("options")) {
    const json& opts = root["options"];
    if (!opts.is_object()) fail("/options", "expected an object");
    check_keys(opts, "/options", {"psd_tol", "rank_tol", "depth_max", "t_grid", "seed", "budget"});
    if (opts.contains("psd_tol")) {
      doc.options.psd_tol = number_at(opts["psd_tol"], "/options/psd_tol");
      if (doc.options.psd_tol <= 0) fail("/options/psd_tol", "must be positive");
    }
    if (opts.contains("rank_tol")) {
      doc.options.rank_tol = number_at(opts["rank_tol"], "/options/rank_tol");
      if (doc.options.rank_tol <= 0) fail("/options/rank_tol", "must be positive");
    }
    if (opts.contains("depth_max")) {
      if (!opts["depth_max"].is_number_integer()) fail("/options/depth_max", "expected an integer");
      doc.options.depth_max = opts["depth_max"].get<int>();
      if (doc.options.depth_max < 1 || doc.options.depth_max > 20) {
        fail("/options/depth_max", "must be between 1 and 20");
      }
    }
    if (opts.contains("seed")) {
      if (!opts["seed"].is_number_integer()) fail("/options/seed", "expected an integer");
      doc.options.seed = opts["seed"].get<std::uint64_t>();
    }
    if (opts.contains("budget")) {
      if (!opts["budget"].is_number_integer()) fail("/options/budget", "expected an integer");
      doc.options.budget = opts["budget"].get<int>();
      if (doc.options.budget < 1) fail("/options/budget", "must be at least 1");
    }
    if (opts.contains("t_grid")) {
      if (!opts["t_grid"].is_array() || opts["t_grid"].empty()) {
        fail("/options/t_grid", "expected a nonempty array of positive times");
      }
      std::vector<double> grid;
      for (std::size_t k = 0; k < opts["t_grid"].size(); ++k) {
        const double t = number_at(opts["t_grid"][k], "/options/t_grid/" + std::to_string(k));
        if (t <= 0) fail("/options/t_grid/" + std::to_string(k), "grid times must be positive");
        grid.push_back(t);
      }
      std::sort(grid.begin(), grid.end());
      doc.options.t_grid = std::move(grid);
    }
  }
  return doc;
}

CPSemigroup ProblemDocument::semigroup() const {
  GKSGenerator g;
  g.dim = dim;
  g.hamiltonian = hamiltonian;
  g.noise_ops = noise_ops;
  g.decay = decay;
  return CPSemigroup(std::move(g), label);
}

}  // namespace mosgroup
