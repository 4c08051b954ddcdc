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

// Command-line front end; talks to the library through the C API only.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "mosgroup.h"

namespace {

bool read_file(const std::string& path, std::string& out, std::string& message) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    message = "cannot read '" + path + "'";
    return false;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mosgroup: metric operator spaces, units, covariance and index "
               "of finite-dimensional CP semigroups"};
  app.set_version_flag("--version", mosgroup_version());

  std::string command;
  std::string document_path;
  std::string other_path;
  double t = 0.0;
  long long seed = 0;
  int depth = 0;
  bool pretty = false;

  app.add_option("command", command,
                 "mos | verify-unit | discover-units | covariance | index | "
                 "tensor-index | dilation-check | selftest")
      ->required();
  app.add_option("document", document_path, "problem document (JSON)");
  auto* t_opt = app.add_option("--t", t, "evolution time for the mos command");
  auto* other_opt = app.add_option("--other", other_path, "second document for tensor-index");
  auto* seed_opt = app.add_option("--seed", seed, "override the document seed");
  auto* depth_opt = app.add_option("--depth", depth, "override the refinement depth");
  app.add_flag("--pretty", pretty, "print an aligned table to stderr");

  CLI11_PARSE(app, argc, argv);

  std::string document_json;
  std::string other_json;
  std::string message;
  if (!document_path.empty() && !read_file(document_path, document_json, message)) {
    std::fprintf(stderr, "error: %s\n", message.c_str());
    return 2;
  }
  if (*other_opt && !read_file(other_path, other_json, message)) {
    std::fprintf(stderr, "error: %s\n", message.c_str());
    return 2;
  }

  mosgroup_overrides overrides{};
  if (*t_opt) {
    overrides.has_t = 1;
    overrides.t = t;
  }
  if (*seed_opt) {
    overrides.has_seed = 1;
    overrides.seed = static_cast<unsigned long long>(seed);
  }
  if (*depth_opt) {
    overrides.has_depth = 1;
    overrides.depth = depth;
  }

  mosgroup_result* result = nullptr;
  const mosgroup_status status =
      mosgroup_run(command.c_str(), document_json.empty() ? nullptr : document_json.c_str(),
                   other_json.empty() ? nullptr : other_json.c_str(), &overrides, &result);

  if (result != nullptr) {
    std::fputs(mosgroup_result_report(result), stdout);
    if (pretty) std::fputs(mosgroup_result_table(result), stderr);
    const char* error = mosgroup_result_error(result);
    if (status != MOSGROUP_OK && error[0] != '\0') {
      std::fprintf(stderr, "error: %s\n", error);
    }
    mosgroup_result_free(result);
  }
  return static_cast<int>(status);
}
