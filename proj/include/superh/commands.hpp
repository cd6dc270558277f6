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

// Subcommand pipelines behind the superh executable. Each writes CSV files
// into out_dir, prints a summary block and returns the process exit code.

#ifndef SUPERH_COMMANDS_HPP_
#define SUPERH_COMMANDS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace superh {

inline constexpr int kExitPass = 0;
inline constexpr int kExitNumericFail = 1;
inline constexpr int kExitParseFail = 2;

struct CommandOptions {
  std::string spec_path;
  std::string sigma;             // path to a matrix document; empty means the spec's sigma
  std::vector<double> s;         // empty means the spec's list
  std::string route = "dense";
  std::optional<double> tol;     // per-command default when unset
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::vector<int> bond_dims;
  double beta = 1.0;
  double time = 1.0;
  int sites = 100;               // decay: single-particle ring length
  int instances = 100;           // knabe: random-row ensemble size
};

/// Runs `name` with the options. Parse and IO errors give kExitParseFail,
/// failed preconditions or numeric checks kExitNumericFail.
int run_command(const std::string& name, const CommandOptions& opt, std::ostream& out, std::ostream& err);

std::vector<std::string> command_names();

}  // namespace superh

#endif  // SUPERH_COMMANDS_HPP_
