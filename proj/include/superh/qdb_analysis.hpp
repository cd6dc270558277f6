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

// Detailed balance with respect to a full-rank state sigma.
//
// Gamma_s^x(A) = sigma^{x(1-s)} A sigma^{xs}; its superoperator matrix is
// kron(sigma^{x(1-s)}, (sigma^{xs})^T). The modular operator is
// Delta(A) = sigma A sigma^{-1}.

#ifndef SUPERH_QDB_ANALYSIS_HPP_
#define SUPERH_QDB_ANALYSIS_HPP_

#include <vector>

#include "superh/lindblad_model.hpp"

namespace superh {

/// sigma^{x(1-s)} a sigma^{xs}.
Matrix gamma_apply(const Matrix& sigma, double s, double x, const Matrix& a);

/// Left and right factors of Gamma_s^x: the superoperator is
/// sandwich(left, right).
struct GammaFactors {
  Matrix left;
  Matrix right;
};
GammaFactors gamma_factors(const Matrix& sigma, double s, double x);

/// Gamma_s^{-x} S Gamma_s^{x}, computed with Kronecker-structured products.
Matrix gamma_conjugate(const Matrix& s_mat, const Matrix& sigma, double s, double x);

struct QdbResidual {
  double s = 1.0;
  /// ||S Gamma_s - Gamma_s S^dagger|| / ||S||, spectral norms.
  double qdb = 0.0;
  /// ||M - M^dagger|| / ||M|| with M = Gamma^{-1/2} S Gamma^{1/2}.
  double qdb2 = 0.0;
};

QdbResidual qdb_residual(const SuperOpMatrix& s, const Matrix& sigma, double s_param);

/// Orthonormal eigenbasis of the modular operator. Element 0 is I/sqrt(N).
struct ModularBasis {
  long dim = 0;                // N
  Matrix vecs;                 // column a = vec(S_a)
  std::vector<double> omega;   // Delta(S_a) = exp(-omega_a) S_a
  std::vector<long> partner;   // S_a^dagger = S_{partner[a]}
  std::vector<int> group;      // index into group_omega
  std::vector<double> group_omega;
  Matrix eigvecs;              // sigma = U diag(exp(-E)) U^dagger
  RealVector energies;         // E_i = -ln p_i

  long size() const { return static_cast<long>(omega.size()); }
  Matrix op(long a) const { return unvec(vecs.col(a)); }
};

/// Off-diagonal elements are U|i><j|U^dagger with omega = E_i - E_j; the
/// diagonal subspace uses discrete Fourier combinations of the eigen
/// projectors so that element 0 is the normalized identity.
ModularBasis modular_basis(const Matrix& sigma);

/// An orthonormal operator frame whose first element is I/sqrt(N).
struct OperatorFrame {
  Matrix vecs;                // column a = vec(G_a)
  std::vector<Sites> supports;  // optional, per element
  bool hermitian = false;
};
OperatorFrame frame_of(const HermitianOperatorBasis& basis);
OperatorFrame frame_of(const ModularBasis& basis);

/// L(rho) = sum_ab K_ab (G_a rho G_b^dag - 1/2 {G_b^dag G_a, rho}) - i[H, rho]
/// over the traceless frame elements G_1, G_2, ...
struct CoefficientMatrix {
  Matrix K;
  Matrix H;            // traceless Hermitian part
  Matrix left;         // general form: sum K G_a rho G_b^dag + left rho + rho right
  Matrix right;
  Matrix frame;        // traceless frame vectors, column a <-> K index a
  std::vector<Sites> supports;
  bool hermitian_basis = false;
  double span_residual = 0.0;     // relative Frobenius residual of the projection
  double lindblad_residual = 0.0; // relative residual of the Lindblad-form rebuild

  long size() const { return K.rows(); }
};

/// Throws NumericalError if the frame does not span S (span residual above
/// tol), or, when require_lindblad_form, if S is not of Lindblad form.
CoefficientMatrix gks_matrix(const SuperOpMatrix& s, const OperatorFrame& frame, double tol = 1e-9,
                             bool require_lindblad_form = true);

/// Superoperator rebuilt from the Lindblad-form data (K, H).
Matrix rebuild_lindblad(const CoefficientMatrix& c);

/// Largest |K_ab| with a != b relative to the largest |K_ab|.
double off_diagonal_mass(const Matrix& k);

/// Largest |C_ab| whose joint support does not fit in a window of k sites.
double locality_violation(const CoefficientMatrix& c, const Lattice& lattice, int k);

struct CanonicalForm {
  Matrix ops;                  // column m = vec(T_m)
  std::vector<double> omega;
  std::vector<double> gamma;   // K'_mm exp(omega/2)
  std::vector<long> partner;
  double off_diagonal = 0.0;   // after the group-wise rotation, relative
  double pairing_residual = 0.0;  // max |gamma_m - gamma_m'| / max gamma
  double zero_group_imag = 0.0;   // imaginary part of K in the Hermitian omega=0 basis
  ModularBasis basis;
};

/// Throws PreconditionError if the rotated K has significant off-diagonal
/// mass, a negative diagonal, or unequal partner rates (S is not QDB for
/// sigma).
CanonicalForm canonical_form(const SuperOpMatrix& s, const Matrix& sigma, double tol = 1e-8);

/// Gamma_s^{-x} o L o Gamma_s^{x}.
SuperOpMatrix deformed_family(const SuperOpMatrix& s, const Matrix& sigma, double s_param, double x);

/// ||C C* - C* C|| / ||C||^2.
double commutator_check(const Matrix& c);

/// Realignment T[(i,k),(j,l)] = S[(i,j),(k,l)]; an involution.
Matrix realign(const Matrix& s);

}  // namespace superh

#endif  // SUPERH_QDB_ANALYSIS_HPP_
