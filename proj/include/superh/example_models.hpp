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

// Two solvable detailed-balanced models on a ring.
//
// Classical: 3-site jumps L_{k,b} = sigma^-_k (x) Pi^b on the neighbours of
// k, paired with their adjoints, driving to the Gibbs state of
// E_x = sum (eps_i - mu) x_i + u sum x_i x_{i+1}. Occupied means |1>.
//
// Fermionic: quadratic gain/loss with circulant rate matrices, realized on
// qubits through a_i = (prod_{j<i} Z_j) sigma^-_i.

#ifndef SUPERH_EXAMPLE_MODELS_HPP_
#define SUPERH_EXAMPLE_MODELS_HPP_

#include <array>
#include <vector>

#include "superh/lindblad_model.hpp"
#include "superh/super_hamiltonian.hpp"

namespace superh {

struct ClassicalModelParams {
  int n = 3;
  std::vector<double> eps;                   // per site; size n
  double mu = 0.0;
  double u = 0.0;
  double beta = 1.0;
  std::vector<std::array<double, 3>> gamma;  // per site and b; empty means all 1

  static ClassicalModelParams uniform(int n, double eps, double mu, double u, double beta);
  double weight(int k, int b) const;
  void check() const;
};

/// omega_{k,b} = -(eps_k - mu) - u b.
double classical_omega(const ClassicalModelParams& p, int k, int b);

/// Local 3-site operator sigma^- (x) Pi^b on (k-1, k, k+1).
Matrix classical_jump_local(int b);

struct ClassicalModel {
  LindbladSpec spec;
  Matrix sigma;
  /// (k, b) of each jump pair; jumps 2m and 2m+1 are L_{k,b} and its adjoint.
  std::vector<std::array<int, 2>> labels;
};

/// Jumps with zero weight are omitted.
ClassicalModel build_classical(const ClassicalModelParams& p);

/// Diagonal Gibbs state of the classical energy.
Matrix classical_gibbs(const ClassicalModelParams& p);

struct RateMatrix {
  RealMatrix rates;  // R(x', x) = f_{x -> x'} off the diagonal, R(x, x) = -g_x
  RealVector exit;   // g_x
};

RateMatrix classical_rate_matrix(const ClassicalModelParams& p);

struct UniquenessReport {
  double min_propagator_entry = 0.0;  // of exp(R t)
  bool propagator_positive = false;
  long kernel_dim = 0;
  double worst_dominance = 0.0;      // max over coherences of offdiag column sum / diagonal
  bool dominance_ok = false;         // worst_dominance < 1
  double max_real_coherence = 0.0;   // max Re of the coherence-block spectrum
  bool coherence_decays = false;
  bool all_weights_positive = true;
  bool all_ok() const {
    return propagator_positive && kernel_dim == 1 && dominance_ok && coherence_decays;
  }
};

UniquenessReport uniqueness_report(const ClassicalModelParams& p, double t = 1.0);

struct FermionParams {
  int n = 4;
  double gin0 = 3.0, gin1 = 1.0;
  double gout0 = 2.0, gout1 = 0.5;
};

struct SingleParticleModel {
  RealMatrix gin;
  RealMatrix gout;
};

/// Symmetric circulant with g0 on the diagonal and g1 on ring neighbours;
/// coinciding neighbours (n < 3) add up.
RealMatrix circulant(int n, double g0, double g1);
SingleParticleModel single_particle(const FermionParams& p);

struct ModeReport {
  RealVector d_in, d_out;  // k = 0..n-1, eigenvalue for exp(2 pi i k j / n)
  RealVector epsilon;      // ln(d_out / d_in)
  RealVector occupation;   // 1 / (1 + exp(epsilon))
  double gap = 0.0;        // min (d_in + d_out) / 2
  bool gapless = false;    // min d <= 1e-10
};

ModeReport fermionic_modes(const SingleParticleModel& m);

/// Jordan-Wigner annihilation operators a_0..a_{n-1} as full 2^n matrices.
std::vector<Matrix> jordan_wigner(int n);

/// Spec with jumps c_k^dagger (weight d_in_k) and c_k (weight d_out_k) for
/// Fourier modes c_k = n^{-1/2} sum_j exp(-2 pi i k j / n) a_j.
LindbladSpec build_fermionic_manybody(const FermionParams& p);

/// Gaussian steady state exp(-sum_ij h_ij a_i^dag a_j) / Z.
Matrix fermionic_gibbs(const FermionParams& p);

struct FermionCoeffs {
  RealMatrix sqrt_product;        // sqrt(gin gout)
  bool bound_applicable = false;  // both |2 g1 / g0| < 1
  double bound_violation = 0.0;   // max(|M_ij| - bound_ij), <= 0 when satisfied
  RealMatrix bound;
  DecayProfile profile;
};

FermionCoeffs fermionic_super_h_coeffs(const SingleParticleModel& m);

/// Coefficient of X -> a_i^dag X a_j in a super-Hamiltonian matrix, by
/// projection onto that orthogonal superoperator.
Matrix hopping_coefficients(const Matrix& super_h, int n);

}  // namespace superh

#endif  // SUPERH_EXAMPLE_MODELS_HPP_
