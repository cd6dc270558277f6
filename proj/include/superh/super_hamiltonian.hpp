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

// Super-Hamiltonian H = -Gamma_s^{-1/2} o L o Gamma_s^{1/2} of a detailed
// balanced Lindbladian, built densely or from local data.

#ifndef SUPERH_SUPER_HAMILTONIAN_HPP_
#define SUPERH_SUPER_HAMILTONIAN_HPP_

#include <string>
#include <vector>

#include "superh/qdb_analysis.hpp"

namespace superh {

enum class Route { kDense, kThm31, kThm32 };

std::string route_name(Route r);
Route parse_route(const std::string& name);

/// A local superoperator on the doubled lattice; `sites` lists original
/// sites followed by their fictitious copies.
struct SuperTerm {
  Matrix local;
  Sites sites;
  int source = -1;  // originating jump index, if any
};

struct SuperHamiltonian {
  Matrix mat;
  Route route = Route::kDense;
  std::vector<SuperTerm> terms;  // local jump route
  Matrix coeff_sqrt;             // (C C*)^{1/2}, basis route
  std::vector<Sites> supports;   // per basis index, basis route
  double hermiticity = 0.0;      // max |H - H^dagger|
};

SuperHamiltonian map_dense(const SuperOpMatrix& s, const Matrix& sigma, double s_param = 1.0);

/// Local terms of the jump-pair formula without assembling them. Requires a
/// total pairing, linearly independent jumps and no Hamiltonian part.
std::vector<SuperTerm> local_jump_terms(const LindbladSpec& spec);

/// Sum of the terms on the doubled lattice.
Matrix assemble_terms(const std::vector<SuperTerm>& terms, const Lattice& lattice,
                      long max_superop_dim = kDefaultSuperOpCap);

SuperHamiltonian map_local_jumps(const LindbladSpec& spec, long max_superop_dim = kDefaultSuperOpCap);

/// Hermitian PSD square root of C C*, via C^{1/2} C* C^{1/2}.
Matrix sqrt_cc(const Matrix& c);

/// Requires a Hermitian basis, PSD C, no Hamiltonian part and
/// commutator_check(C) <= comm_tol.
SuperHamiltonian map_basis(const CoefficientMatrix& c, double comm_tol = 1e-8);

/// Max gap of a greedy nearest-neighbor matching after lexicographic sort.
double multiset_distance(std::vector<cplx> a, std::vector<cplx> b);

struct VerificationReport {
  double spectrum_distance = 0.0;  // spectrum(H) vs -spectrum(S)
  double kernel_residual = 0.0;    // ||H vec(sqrt sigma)||
  double hermiticity = 0.0;
  double min_eigenvalue = 0.0;     // of the Hermitian part of H
  double gap_h = 0.0;
  double gap_s = 0.0;
  long kernel_dim_h = 0;
};

VerificationReport verify_mapping(const SuperOpMatrix& s, const SuperHamiltonian& h, const Matrix& sigma,
                                  double zero_threshold = -1.0);

struct DecayProfile {
  std::vector<int> distance;
  std::vector<double> max_abs;  // per distance
  std::vector<double> bound;    // explicit polynomial-approximation bound per distance
  double lambda_min = 0.0;      // smallest eigenvalue of M M^dagger above 1e-10 lambda_max
  double lambda_max = 0.0;
  double j = 0.0;               // max |C_ab| (or |M_ab| without C)
  int bandwidth = 0;            // largest distance with a nonzero entry of M M^dagger
  double exp_rate = 0.0;        // y ~ c1 exp(-c2 r)
  double exp_prefactor = 0.0;
  double exp_r2 = 0.0;
  double poly_exponent = 0.0;   // y ~ c r^{-p}
  double poly_prefactor = 0.0;
  double poly_r2 = 0.0;
  int fit_points = 0;
  bool degenerate = false;      // every entry at r >= 1 below 1e-14
  bool prefers_exponential() const { return exp_r2 >= poly_r2; }
};

/// m is the matrix whose decay is measured; c (optional, same size) is the
/// coefficient matrix defining J. The bound uses A = m m^dagger.
DecayProfile decay_profile(const Matrix& m, const std::vector<Sites>& supports, const Lattice& lattice,
                           const Matrix* c = nullptr);

struct SqrtPolyResult {
  Matrix value;       // P_m(A)
  double error = 0.0; // ||sqrt(A) - P_m(A)||
  double bound = 0.0; // sqrt(lambda_max) exp(-m lambda_min / lambda_max)
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  bool within_bound = true;  // error <= bound (1 + 1e-6)
};

/// Truncated binomial series P_m(z) = z Q_m(z) for sqrt(z).
SqrtPolyResult sqrt_poly(const Matrix& a, int m);

}  // namespace superh

#endif  // SUPERH_SUPER_HAMILTONIAN_HPP_
