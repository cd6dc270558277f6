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

// Lindbladians in jump form and their vectorized superoperator matrices.
//
// Vectorization is row-major: vec(X)[i*N + j] = X(i, j), so |i><j| maps to
// |i>|j> and the superoperator X -> A X B has matrix kron(A, B^T). On the
// doubled lattice the first n sites are the original ones and the last n the
// fictitious copies.

#ifndef SUPERH_LINDBLAD_MODEL_HPP_
#define SUPERH_LINDBLAD_MODEL_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "superh/operator_core.hpp"

namespace superh {

struct JumpTerm {
  Matrix op;         // local matrix on `sites`
  Sites sites;
  double weight = 1.0;
  int partner = -1;  // index of the term whose operator is op^dagger, or -1
};

struct HamiltonianTerm {
  Matrix op;
  Sites sites;
};

struct LindbladSpec {
  Lattice lattice{1, 2};
  std::vector<JumpTerm> jumps;
  std::vector<HamiltonianTerm> hamiltonian;
  int k = 1;  // declared locality
};

struct SuperOpMatrix {
  Matrix mat;
  std::string provenance;

  long dim() const { return mat.rows(); }
};

// --- vectorization -------------------------------------------------------

Vector vec(const Matrix& x);
Matrix unvec(const Vector& v);
/// Matrix of X -> a X b.
Matrix sandwich(const Matrix& a, const Matrix& b);
/// The doubled lattice carrying vectorized operators (2n sites).
Lattice doubled(const Lattice& lattice);
/// Sites of the doubled lattice touched by a superoperator supported on
/// `sites`: the originals followed by their fictitious copies.
Sites doubled_sites(const Sites& sites, const Lattice& lattice);
/// kron(a, b) * m without forming the Kronecker product.
Matrix kron_apply_left(const Matrix& a, const Matrix& b, const Matrix& m);
/// m * kron(a, b) without forming the Kronecker product.
Matrix kron_apply_right(const Matrix& m, const Matrix& a, const Matrix& b);
/// unvec(s * vec(x)).
Matrix superop_apply(const Matrix& s, const Matrix& x);
/// Induced 1-norm (max column sum); a cheap scale for thresholds.
double one_norm(const Matrix& m);

// --- assembly and analysis -----------------------------------------------

/// Local superoperator of one weighted jump (without the weight) on the
/// ordering (sites, fictitious sites).
Matrix local_dissipator(const Matrix& l);
/// Local superoperator of -i[h, .].
Matrix local_commutator(const Matrix& h);

/// Largest superoperator dimension N^2 that assemble accepts by default.
inline constexpr long kDefaultSuperOpCap = 4096;

SuperOpMatrix assemble(const LindbladSpec& spec, long max_superop_dim = kDefaultSuperOpCap);

/// The Lindbladian applied to rho directly from the jump form.
Matrix apply_lindbladian(const LindbladSpec& spec, const Matrix& rho);

/// Default zero threshold 1e-8 * ||S||_1.
double default_zero_threshold(const Matrix& s);

struct SpectrumReport {
  std::vector<cplx> eigenvalues;
  double gap = 0.0;
  long zero_count = 0;
  bool no_nonzero = false;     // every eigenvalue counted as zero
  double max_real = 0.0;
  bool left_half_plane = true;  // max Re <= 1e-9 * max(1, ||S||_1)
  double zero_threshold = 0.0;
};

/// zero_threshold < 0 selects the default.
SpectrumReport spectrum_and_gap(const SuperOpMatrix& s, double zero_threshold = -1.0);

struct SteadyStateReport {
  long kernel_dim = 0;
  bool unique = false;
  /// Hermitian kernel basis; each element is normalized to unit trace when
  /// its trace is nonzero, otherwise to unit Hilbert-Schmidt norm.
  std::vector<Matrix> states;
  /// Per state: smallest eigenvalue (negative values mean not a state).
  std::vector<double> min_eigenvalue;
  double zero_threshold = 0.0;
};

/// Kernel of S. Throws NumericalError if no singular value falls below the
/// threshold (contradicts existence of a steady state).
SteadyStateReport steady_states(const SuperOpMatrix& s, double zero_threshold = -1.0);

/// exp(S t) applied to rho0.
Matrix evolve(const SuperOpMatrix& s, const Matrix& rho0, double t);

struct ValidationItem {
  std::string check;
  int term = -1;  // -1 for global checks
  bool ok = true;
  double value = 0.0;
};

struct ValidationReport {
  std::vector<ValidationItem> items;
  bool all_ok() const;
};

ValidationReport validate(const LindbladSpec& spec, std::uint64_t seed = 7);

}  // namespace superh

#endif  // SUPERH_LINDBLAD_MODEL_HPP_
