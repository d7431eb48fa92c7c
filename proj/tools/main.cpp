// Copyright 2026 The anomaly-index Authors
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

// anomaly-index command-line tool

#include <CLI11.hpp>

#include <iostream>

#include "anomaly/commands.hpp"

using namespace anomaly;
using io::Json;

namespace {

struct Config {
  std::string input;
  std::string format = "json";
  commands::Options opts;
};

bool is_cochain(const Json& j) { return j.is_object() && j.contains("values") && j.contains("degree"); }

void print_text(const Json& j, std::ostream& os, const std::string& prefix = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix + it.key();
    const Json& v = it.value();
    if (is_cochain(v)) {
      os << key << ": degree-" << v["degree"].get<int>() << " cochain, " << v["values"].size() << " values\n";
    } else if (v.is_object()) {
      print_text(v, os, key + ".");
    } else if (v.is_array() && !v.empty() && is_cochain(v.front())) {
      os << key << ": " << v.size() << " cochains\n";
    } else {
      os << key << ": " << v.dump() << "\n";
    }
  }
}

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Validation: return 2;
    case ErrorCategory::Computation: return 3;
    case ErrorCategory::SizeCap: return 4;
  }
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group-cohomological anomaly indices of finite-group actions on spin chains"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--tol", cfg.opts.tol, "unitarity and scalarness tolerance")->check(CLI::PositiveNumber);
  app.add_option("--snap-tol", cfg.opts.snap_tol, "rational snapping tolerance")->check(CLI::PositiveNumber);
  app.add_option("--modulus-power", cfg.opts.modulus_power, "modulus power K for Z[1/n]/Z witnesses")->check(CLI::Range(1u, 64u));
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", cfg.opts.seed, "seed for sampled inputs");

  using Runner = Json (*)(const Json&, const commands::Options&);
  const std::vector<std::tuple<const char*, const char*, Runner>> runners{
      {"cohomology", "cohomology group of a finite group, or the class of a cochain", commands::cohomology},
      {"projective", "factor set and class of a projective representation", commands::projective},
      {"anomaly", "anomaly index of a circuit symmetry action", commands::anomaly},
      {"nogo", "realizability of an anomaly class on a chain", commands::nogo},
      {"detcheck", "log-determinants of a unitary", commands::detcheck}};
  Runner chosen = nullptr;
  for (const auto& [name, help, fn] : runners) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--input", cfg.input, "input JSON file")->required();
    // global options are also accepted after the subcommand
    sub->fallthrough();
    sub->callback([&chosen, fn = fn] { chosen = fn; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const Json out = chosen(io::read_file(cfg.input), cfg.opts);
    if (cfg.format == "json") std::cout << out.dump(2) << "\n";
    else print_text(out, std::cout);
    return 0;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    std::cout << Json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump(2) << "\n";
    return exit_code(category(e.code()));
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
