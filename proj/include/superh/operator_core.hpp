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

// Dense operator algebra on a ring of qudits.
//
// Tensor ordering is global and fixed: site 0 is the slowest-varying index
// of a basis label, site n-1 the fastest. Every module inherits this.
// Sites are 0-based.

#ifndef SUPERH_OPERATOR_CORE_HPP_
#define SUPERH_OPERATOR_CORE_HPP_

#include <functional>
#include <string>
#include <vector>

#include "superh/types.hpp"

namespace superh {

using Sites = std::vector<int>;

/// A periodic 1D chain of n sites with local dimension d.
class Lattice {
 public:
  Lattice(int n, int d);

  int n() const { return n_; }
  int d() const { return d_; }
  /// Hilbert-space dimension d^n. Throws if it does not fit densely; the
  /// geometry alone stays usable for large n.
  long dim() const;

  /// Ring distance min(|i-j|, n-|i-j|).
  int dist(int i, int j) const;
  /// Smallest ring distance between any site of `a` and any site of `b`.
  /// Either set empty gives 0.
  int dist(const Sites& a, const Sites& b) const;
  /// Length of the shortest contiguous ring window containing `sites`.
  int window_span(const Sites& sites) const;

  bool operator==(const Lattice&) const = default;

 private:
  int n_;
  int d_;
  long dim_;  // 0 when d^n overflows
};

/// Returns local_op acting on `sites` (in the listed order) tensored with
/// the identity elsewhere.
Matrix embed(const Matrix& local_op, const Sites& sites, const Lattice& lattice);

/// target += coeff * embed(local_op, sites, lattice), without a temporary.
void embed_add(Matrix& target, const Matrix& local_op, const Sites& sites,
               const Lattice& lattice, cplx coeff = 1.0);

/// Reduced operator on `keep`; the output tensor order follows `keep`.
/// An empty `keep` yields the full trace as a 1x1 matrix.
Matrix partial_trace(const Matrix& op, const Sites& keep, const Lattice& lattice);

/// Reshapes a state vector into a matrix with rows indexed by the sites in
/// `keep` (listed order) and columns by the remaining sites (site order).
Matrix reshape_bipartite(const Vector& psi, const Sites& keep, const Lattice& lattice);

/// Inverse of reshape_bipartite.
Vector unreshape_bipartite(const Matrix& m, const Sites& keep, const Lattice& lattice);

/// Applies f to the eigenvalues of a Hermitian matrix.
Matrix hermitian_function(const Matrix& a, const std::function<double(double)>& f);

/// A^x for Hermitian PSD A. Eigenvalues in [-1e-12 * max(1, |A|), 0) are
/// clamped to zero; negative powers require a strictly positive spectrum.
Matrix hermitian_power(const Matrix& a, double x, double hermitian_tol = 1e-10);

/// All eigenvalues with multiplicity, sorted by (Re, Im). Structurally
/// decoupled blocks are diagonalized separately.
std::vector<cplx> general_spectrum(const Matrix& m);

/// Ascending eigenvalues of the Hermitian part of m, block by block.
RealVector hermitian_spectrum(const Matrix& m);

/// Index groups of the connected components of the nonzero pattern of m
/// (symmetrized). m is block diagonal up to a permutation along them.
std::vector<std::vector<long>> coupled_blocks(const Matrix& m);

/// Orthonormal Hermitian operators with per-element site support.
struct HermitianOperatorBasis {
  std::vector<Matrix> elements;
  std::vector<Sites> supports;
  std::vector<std::string> labels;

  std::size_t size() const { return elements.size(); }
};

/// Normalized Pauli strings whose non-identity sites fit in a contiguous
/// ring window of at most k sites, identity first. Requires d == 2.
HermitianOperatorBasis pauli_basis(const Lattice& lattice, int k);

// Small helpers shared across modules.

Matrix kron(const Matrix& a, const Matrix& b);
Matrix identity(long dim);
/// Max-entry distance between m and its adjoint.
double hermiticity_residual(const Matrix& m);
/// Largest singular value.
double spectral_norm(const Matrix& m);
/// Hilbert-Schmidt inner product Tr(a^dagger b).
cplx hs_inner(const Matrix& a, const Matrix& b);
/// Sum of singular values of a Hermitian matrix.
double trace_norm_hermitian(const Matrix& m);

/// Single-qubit operators in the computational basis {|0>, |1>}.
namespace qubit {
Matrix pauli(char label);  // 'I', 'X', 'Y', 'Z'
/// |0><1|, the annihilation operator.
Matrix lowering();
/// |1><0|
Matrix raising();
/// |1><1|, the occupation number.
Matrix number();
/// |0><0|
Matrix hole();
}  // namespace qubit

}  // namespace superh

#endif  // SUPERH_OPERATOR_CORE_HPP_
