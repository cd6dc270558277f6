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

// Entropies of a state and of its vectorized square root. All entropies are
// in nats.
//
// The doubled state lives on n pair-sites of dimension d^2, each pair-site
// being (original, fictitious) with the original digit slower.

#ifndef SUPERH_ENTANGLEMENT_HPP_
#define SUPERH_ENTANGLEMENT_HPP_

#include <vector>

#include "superh/operator_core.hpp"

namespace superh {

struct DoubledState {
  Vector psi;          // interleaved layout
  Lattice pairs{1, 4};  // n pair-sites of dimension d^2
  int d = 2;
};

/// vec(sigma^{1/2}) reordered to the interleaved pair-site layout.
DoubledState vectorize_state(const Matrix& sigma, const Lattice& lattice);

/// Interleaved vector back to the (originals, fictitious) layout.
Vector deinterleave(const DoubledState& state);

/// max |Tr_fict |psi><psi| - sigma|.
double purification_residual(const DoubledState& state, const Matrix& sigma);

/// -sum p ln p over eigenvalues above 1e-14.
double von_neumann_entropy(const Matrix& rho);

/// S(sigma_A) + S(sigma_B) - S(sigma).
double mutual_information(const Matrix& sigma, const Sites& a, const Lattice& lattice);

struct EntanglementReport {
  Sites cut;
  double op_entropy = 0.0;         // S(A) of the doubled state
  double mutual_information = 0.0;  // I(A:B) of sigma
  RealVector schmidt;               // Schmidt coefficients across the cut
  bool mi_bound_ok = true;          // I <= 2 S + 1e-8
};

/// `cut` must be a contiguous ring interval, proper and nonempty.
EntanglementReport op_space_entropy(const Matrix& sigma, const Sites& cut, const Lattice& lattice);

struct TruncationPoint {
  int bond_dim = 0;
  double trace_distance = 0.0;  // ||sigma - Psi||_1
  double vec_distance = 0.0;    // ||vec(sqrt sigma) - psi_D||
  double overlap = 0.0;         // |<psi_D | vec(sqrt sigma)>|
  double sound_bound = 0.0;     // 2 sqrt(1 - overlap^2), always >= trace_distance
  double sqrt2_bound = 0.0;     // sqrt(2) * vec_distance
};

/// Sequential SVD truncation of the doubled state to bond dimension D,
/// followed by the trace over fictitious sites.
std::vector<TruncationPoint> truncation_curve(const Matrix& sigma, const Lattice& lattice,
                                              const std::vector<int>& bond_dims);

}  // namespace superh

#endif  // SUPERH_ENTANGLEMENT_HPP_
