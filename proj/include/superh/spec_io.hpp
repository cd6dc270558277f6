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

// Model spec documents (JSON, format tag "superh-spec/1") and CSV output.
//
// Generic document:
//   {"format": "superh-spec/1", "kind": "generic",
//    "lattice": {"n": 2, "d": 2}, "k": 1,
//    "jumps": [{"op": "sm", "sites": [0], "weight": 1.0, "partner": 1}, ...],
//    "hamiltonian": [{"op": [[1, 0], [0, -1]], "sites": [1]}],
//    "sigma": "mixed" | matrix | {"gibbs": {"terms": [...], "beta": 1.0}},
//    "s": [1.0], "seed": 7}
// Classical and fermionic documents carry "params" instead of lattice and
// jumps; their sigma is the model's own steady state.
//
// Operators are either a named single-site operator (I, X, Y, Z, sm, sp, n)
// or a list of rows whose entries are reals or [re, im] pairs.

#ifndef SUPERH_SPEC_IO_HPP_
#define SUPERH_SPEC_IO_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "superh/example_models.hpp"

namespace superh {

/// Malformed document, unknown key or unreadable file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kSpecFormat = "superh-spec/1";

enum class ModelKind { kGeneric, kClassical, kFermionic };

struct ModelDocument {
  ModelKind kind = ModelKind::kGeneric;
  LindbladSpec spec;
  Matrix sigma;
  std::vector<double> s{1.0};
  std::uint64_t seed = 7;
  ClassicalModelParams classical;
  FermionParams fermion;
};

ModelDocument parse_spec(const std::string& text);
ModelDocument load_spec(const std::string& path);

/// A bare matrix document (list of rows) used by --sigma.
Matrix parse_matrix_text(const std::string& text);
Matrix load_matrix(const std::string& path);

std::string classical_document(const ClassicalModelParams& p, const std::vector<double>& s = {1.0});
std::string fermionic_document(const FermionParams& p, const std::vector<double>& s = {1.0});

/// %.17g, so a double round-trips.
std::string format_double(double x);

/// Small CSV writer; every column header carries its convention in brackets.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(const std::vector<double>& row);
  void add_row(const std::vector<std::string>& row);
  std::string str() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

void write_text(const std::string& path, const std::string& text);

}  // namespace superh

#endif  // SUPERH_SPEC_IO_HPP_
