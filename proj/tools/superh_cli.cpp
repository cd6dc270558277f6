// Copyright 2026 The superh Authors
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

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "superh/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"superh: super-Hamiltonians of detailed-balanced Lindbladians"};
  app.require_subcommand(1);
  superh::CommandOptions opt;
  double tol = 0.0;
  std::uint64_t seed = 0;

  const std::map<std::string, std::string> about = {
      {"check-qdb", "detailed-balance residuals per s"},
      {"map", "build and verify the super-Hamiltonian"},
      {"spectrum", "Lindbladian spectrum and gap"},
      {"steady-state", "kernel of the Lindbladian"},
      {"evolve", "evolve |0><0| for --time"},
      {"entanglement", "operator-space entropy and truncation curves"},
      {"knabe", "local-gap table of the classical model"},
      {"models", "write the example model documents"},
      {"decay", "hopping decay of the fermionic super-Hamiltonian"},
  };
  for (const auto& name : superh::command_names()) {
    auto it = about.find(name);
    CLI::App* sub = app.add_subcommand(name, it == about.end() ? "" : it->second);
    sub->add_option("--spec", opt.spec_path, "model spec document");
    sub->add_option("--sigma", opt.sigma, "reference state as a matrix document");
    sub->add_option("--s", opt.s, "s parameters")->delimiter(',');
    sub->add_option("--route", opt.route, "dense | thm31 | thm32");
    sub->add_option("--tol", tol, "tolerance");
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--out-dir", opt.out_dir, "directory for CSV output");
    sub->add_option("--bond-dims", opt.bond_dims, "bond dimensions for truncation")->delimiter(',');
    sub->add_option("--beta", opt.beta, "inverse temperature");
    sub->add_option("--time", opt.time, "evolution time");
    sub->add_option("--sites", opt.sites, "single-particle ring length for decay");
    sub->add_option("--instances", opt.instances, "random instances for the knabe table");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : superh::kExitParseFail;
  }
  CLI::App* chosen = app.get_subcommands().front();
  if (chosen->count("--tol")) opt.tol = tol;
  if (chosen->count("--seed")) opt.seed = seed;
  return superh::run_command(chosen->get_name(), opt, std::cout, std::cerr);
}
