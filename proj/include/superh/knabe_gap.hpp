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

// Knabe-type finite-size gap bounds for frustration-free super-Hamiltonians
// made of 3-site terms on a ring.

#ifndef SUPERH_KNABE_GAP_HPP_
#define SUPERH_KNABE_GAP_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "superh/example_models.hpp"

namespace superh {

/// Terms H_k on the doubled lattice. Each local matrix acts on
/// doubled_sites({k-1, k, k+1}).
struct LocalTermSet {
  Lattice lattice{3, 2};
  std::vector<Matrix> terms;
  std::vector<Sites> sites;  // original sites, in the order the term uses
  Vector kernel;             // vec(sqrt sigma) on the full doubled lattice, if available
};

/// sum_b of the jump-pair super-Hamiltonian terms of site k with all
/// gamma_{k,b} = 1. Acts on (k-1, k, k+1, fict k-1, fict k, fict k+1).
Matrix classical_site_term(double eps_k, double mu, double u, double beta);

LocalTermSet classical_local_terms(const ClassicalModelParams& p, bool with_kernel = true);

struct PositiveProjector {
  Matrix projector;
  double g = 0.0;  // smallest eigenvalue above the threshold
};

/// Spectral projector onto eigenvalues above 1e-9 ||H||, computed block by
/// block so the block structure is exact.
PositiveProjector positive_projector(const Matrix& h);

/// Smallest eigenvalue above 1e-9 of P_a + P_b on the union window.
double pair_gap(const Matrix& pa, const Sites& sa, const Matrix& pb, const Sites& sb, int d = 2);

struct GapCertificate {
  double gamma_loc = 0.0;
  int delta = 2;
  double bound = 0.0;
  double g_min = 0.0;
  std::vector<double> g;         // per term
  std::vector<double> pair_gaps;  // pair (k, k+1)
  bool valid() const { return bound > 0.0; }
};

/// Minimum over ring-adjacent pairs of pair_gap.
GapCertificate local_gap(const LocalTermSet& terms);

/// 2 (delta - 1) (gamma_loc - (1 - 1 / (2 (delta - 1)))).
double knabe_bound(double gamma_loc, int delta = 2);

/// Smallest eigenvalue above 1e-9 of sum_k P_k on the full doubled lattice.
double sum_projector_gap(const LocalTermSet& terms);

/// Same for sum_k H_k.
double sum_terms_gap(const LocalTermSet& terms);

struct KnabeTable {
  double beta = 1.0;
  double mu = 0.0;
  std::vector<double> u{-1.0, 0.5, 2.0};
  std::vector<std::string> rows;
  std::vector<std::vector<double>> values;  // rows x u
  int random_instances = 100;
  int random_ring = 4;
  std::uint64_t seed = 1;
};

/// Rows: random eps, const eps = 1, const eps = 0.5, alternating 1 / 10.
KnabeTable knabe_table(double beta = 1.0, int random_instances = 100, std::uint64_t seed = 1);

}  // namespace superh

#endif  // SUPERH_KNABE_GAP_HPP_
