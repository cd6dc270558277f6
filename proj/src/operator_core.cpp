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

#include "superh/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace superh {

Lattice::Lattice(int n, int d) : n_(n), d_(d), dim_(1) {
  if (n < 1) throw PreconditionError("lattice needs at least one site");
  if (d < 2) throw PreconditionError("local dimension must be at least 2");
  for (int i = 0; i < n; ++i) {
    if (dim_ > (1L << 40) / d) {
      dim_ = 0;
      break;
    }
    dim_ *= d;
  }
}

long Lattice::dim() const {
  if (dim_ == 0) throw PreconditionError("lattice dimension too large for dense operators");
  return dim_;
}

int Lattice::dist(int i, int j) const {
  int diff = std::abs(i - j) % n_;
  return std::min(diff, n_ - diff);
}

int Lattice::dist(const Sites& a, const Sites& b) const {
  if (a.empty() || b.empty()) return 0;
  int best = n_;
  for (int i : a)
    for (int j : b) best = std::min(best, dist(i, j));
  return best;
}

int Lattice::window_span(const Sites& sites) const {
  if (sites.empty()) return 0;
  std::vector<int> s(sites.begin(), sites.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  int max_gap = s.front() + n_ - s.back();
  for (std::size_t i = 1; i < s.size(); ++i) max_gap = std::max(max_gap, s[i] - s[i - 1]);
  return n_ - max_gap + 1;
}

namespace {

// For a site list S, splits every global basis index into (local index over
// S in listed order, rest index over the complement in site order).
struct IndexSplit {
  std::vector<long> local;
  std::vector<long> rest;
  long local_dim = 1;
  long rest_dim = 1;
};

IndexSplit split_indices(const Sites& sites, const Lattice& lattice) {
  const int n = lattice.n();
  const int d = lattice.d();
  std::vector<int> slot(n, -1);
  for (std::size_t k = 0; k < sites.size(); ++k) {
    int s = sites[k];
    if (s < 0 || s >= n) throw PreconditionError("site index out of range");
    if (slot[s] != -1) throw PreconditionError("duplicate site in support");
    slot[s] = static_cast<int>(k);
  }
  IndexSplit out;
  const long dim = lattice.dim();
  out.local.resize(dim);
  out.rest.resize(dim);
  const int m = static_cast<int>(sites.size());
  for (int k = 0; k < m; ++k) out.local_dim *= d;
  out.rest_dim = dim / out.local_dim;
  std::vector<long> local_stride(m);
  {
    long st = 1;
    for (int k = m - 1; k >= 0; --k) {
      local_stride[k] = st;
      st *= d;
    }
  }
  std::vector<int> digits(n);
  for (long idx = 0; idx < dim; ++idx) {
    long r = idx;
    for (int s = n - 1; s >= 0; --s) {
      digits[s] = static_cast<int>(r % d);
      r /= d;
    }
    long loc = 0;
    long rest = 0;
    for (int s = 0; s < n; ++s) {
      if (slot[s] >= 0) {
        loc += digits[s] * local_stride[slot[s]];
      } else {
        rest = rest * d + digits[s];
      }
    }
    out.local[idx] = loc;
    out.rest[idx] = rest;
  }
  return out;
}

// groups[rest][local] = global index
std::vector<std::vector<long>> group_by_rest(const IndexSplit& split) {
  std::vector<std::vector<long>> groups(split.rest_dim, std::vector<long>(split.local_dim));
  for (long idx = 0; idx < static_cast<long>(split.local.size()); ++idx)
    groups[split.rest[idx]][split.local[idx]] = idx;
  return groups;
}

}  // namespace

void embed_add(Matrix& target, const Matrix& local_op, const Sites& sites,
               const Lattice& lattice, cplx coeff) {
  const long dim = lattice.dim();
  if (target.rows() != dim || target.cols() != dim)
    throw PreconditionError("embed target has wrong dimension");
  IndexSplit split = split_indices(sites, lattice);
  if (local_op.rows() != split.local_dim || local_op.cols() != split.local_dim)
    throw PreconditionError("local operator dimension does not match its support");
  auto groups = group_by_rest(split);
  for (const auto& g : groups) {
    for (long b = 0; b < split.local_dim; ++b) {
      for (long a = 0; a < split.local_dim; ++a) {
        cplx v = local_op(a, b);
        if (v != cplx(0.0)) target(g[a], g[b]) += coeff * v;
      }
    }
  }
}

Matrix embed(const Matrix& local_op, const Sites& sites, const Lattice& lattice) {
  Matrix out = Matrix::Zero(lattice.dim(), lattice.dim());
  embed_add(out, local_op, sites, lattice);
  return out;
}

Matrix partial_trace(const Matrix& op, const Sites& keep, const Lattice& lattice) {
  const long dim = lattice.dim();
  if (op.rows() != dim || op.cols() != dim)
    throw PreconditionError("operator dimension does not match lattice");
  IndexSplit split = split_indices(keep, lattice);
  auto groups = group_by_rest(split);
  Matrix out = Matrix::Zero(split.local_dim, split.local_dim);
  for (const auto& g : groups)
    for (long b = 0; b < split.local_dim; ++b)
      for (long a = 0; a < split.local_dim; ++a) out(a, b) += op(g[a], g[b]);
  return out;
}

Matrix reshape_bipartite(const Vector& psi, const Sites& keep, const Lattice& lattice) {
  if (psi.size() != lattice.dim()) throw PreconditionError("state dimension does not match lattice");
  IndexSplit split = split_indices(keep, lattice);
  Matrix out(split.local_dim, split.rest_dim);
  for (long idx = 0; idx < lattice.dim(); ++idx) out(split.local[idx], split.rest[idx]) = psi(idx);
  return out;
}

Vector unreshape_bipartite(const Matrix& m, const Sites& keep, const Lattice& lattice) {
  IndexSplit split = split_indices(keep, lattice);
  if (m.rows() != split.local_dim || m.cols() != split.rest_dim)
    throw PreconditionError("matrix shape does not match the bipartition");
  Vector out(lattice.dim());
  for (long idx = 0; idx < lattice.dim(); ++idx) out(idx) = m(split.local[idx], split.rest[idx]);
  return out;
}

Matrix hermitian_function(const Matrix& a, const std::function<double(double)>& f) {
  Matrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigen-solver failed");
  RealVector w = es.eigenvalues();
  RealVector fw(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) fw(i) = f(w(i));
  const Matrix& v = es.eigenvectors();
  return v * fw.cast<cplx>().asDiagonal() * v.adjoint();
}

Matrix hermitian_power(const Matrix& a, double x, double hermitian_tol) {
  if (a.rows() != a.cols()) throw PreconditionError("hermitian_power needs a square matrix");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (hermiticity_residual(a) > hermitian_tol * scale)
    throw PreconditionError("hermitian_power: matrix is not Hermitian");
  Matrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigen-solver failed");
  RealVector w = es.eigenvalues();
  const double wmax = std::max(1.0, w.cwiseAbs().maxCoeff());
  if (w.minCoeff() < -1e-12 * wmax)
    throw PreconditionError("hermitian_power: negative eigenvalue beyond tolerance");
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = std::max(w(i), 0.0);
  if (x < 0.0 && w.minCoeff() <= 1e-14 * w.maxCoeff())
    throw PreconditionError("hermitian_power: negative power of a singular matrix");
  RealVector p(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) p(i) = (x == 0.0) ? 1.0 : std::pow(w(i), x);
  const Matrix& v = es.eigenvectors();
  return v * p.cast<cplx>().asDiagonal() * v.adjoint();
}

std::vector<std::vector<long>> coupled_blocks(const Matrix& m) {
  const long dim = m.rows();
  std::vector<long> parent(dim);
  std::iota(parent.begin(), parent.end(), 0L);
  auto find = [&](long x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (long j = 0; j < dim; ++j)
    for (long i = 0; i < dim; ++i)
      if (i != j && m(i, j) != cplx(0.0)) {
        long a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
  std::vector<std::vector<long>> blocks;
  std::vector<long> block_of(dim, -1);
  for (long i = 0; i < dim; ++i) {
    long r = find(i);
    if (block_of[r] < 0) {
      block_of[r] = static_cast<long>(blocks.size());
      blocks.emplace_back();
    }
    blocks[block_of[r]].push_back(i);
  }
  return blocks;
}

namespace {

Matrix sub_block(const Matrix& m, const std::vector<long>& idx) {
  const long k = static_cast<long>(idx.size());
  Matrix out(k, k);
  for (long j = 0; j < k; ++j)
    for (long i = 0; i < k; ++i) out(i, j) = m(idx[i], idx[j]);
  return out;
}

}  // namespace

std::vector<cplx> general_spectrum(const Matrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("spectrum of a non-square matrix");
  if (!m.allFinite()) throw PreconditionError("matrix has non-finite entries");
  std::vector<cplx> out;
  out.reserve(m.rows());
  for (const auto& block : coupled_blocks(m)) {
    if (block.size() == 1) {
      out.push_back(m(block[0], block[0]));
      continue;
    }
    Eigen::ComplexEigenSolver<Matrix> es(sub_block(m, block), false);
    if (es.info() != Eigen::Success) throw NumericalError("eigen-solver did not converge");
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
  }
  for (const auto& z : out)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw NumericalError("eigen-solver produced non-finite eigenvalues");
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  return out;
}

RealVector hermitian_spectrum(const Matrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("spectrum of a non-square matrix");
  Matrix h = 0.5 * (m + m.adjoint());
  std::vector<double> vals;
  vals.reserve(h.rows());
  for (const auto& block : coupled_blocks(h)) {
    if (block.size() == 1) {
      vals.push_back(h(block[0], block[0]).real());
      continue;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(sub_block(h, block), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigen-solver failed");
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) vals.push_back(es.eigenvalues()(i));
  }
  std::sort(vals.begin(), vals.end());
  return Eigen::Map<RealVector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

HermitianOperatorBasis pauli_basis(const Lattice& lattice, int k) {
  if (lattice.d() != 2) throw PreconditionError("pauli_basis requires local dimension 2");
  const int n = lattice.n();
  if (k < 1 || k > n) throw PreconditionError("pauli_basis: support size k must be in [1, n]");
  std::set<std::string> labels;
  const int starts = (k == n) ? 1 : n;
  const char letters[4] = {'I', 'X', 'Y', 'Z'};
  long combos = 1;
  for (int i = 0; i < k; ++i) combos *= 4;
  for (int s = 0; s < starts; ++s) {
    for (long c = 0; c < combos; ++c) {
      std::string label(n, 'I');
      long r = c;
      for (int w = 0; w < k; ++w) {
        label[(s + w) % n] = letters[r % 4];
        r /= 4;
      }
      labels.insert(label);
    }
  }
  std::vector<std::string> ordered(labels.begin(), labels.end());
  auto weight = [](const std::string& l) { return std::count_if(l.begin(), l.end(), [](char ch) { return ch != 'I'; }); };
  std::stable_sort(ordered.begin(), ordered.end(),
                   [&](const std::string& a, const std::string& b) { return weight(a) < weight(b); });

  HermitianOperatorBasis basis;
  const double norm = 1.0 / std::sqrt(static_cast<double>(lattice.dim()));
  for (const auto& label : ordered) {
    Matrix op = Matrix::Identity(1, 1);
    Sites support;
    for (int s = 0; s < n; ++s) {
      op = kron(op, qubit::pauli(label[s]));
      if (label[s] != 'I') support.push_back(s);
    }
    basis.elements.push_back(norm * op);
    basis.supports.push_back(std::move(support));
    basis.labels.push_back(label);
  }
  return basis;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix identity(long dim) { return Matrix::Identity(dim, dim); }

double hermiticity_residual(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (std::max(m.rows(), m.cols()) <= 1200) {
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues()(0);
  }
  // Power iteration on m^dagger m for large operands; converges from below.
  Vector v = Vector::Ones(m.cols()).normalized();
  double est = 0.0;
  for (int it = 0; it < 500; ++it) {
    Vector w = m.adjoint() * (m * v);
    double nrm = w.norm();
    if (nrm == 0.0) return 0.0;
    v = w / nrm;
    double next = std::sqrt(nrm);
    if (std::abs(next - est) <= 1e-12 * next) {
      est = next;
      break;
    }
    est = next;
  }
  return est;
}

cplx hs_inner(const Matrix& a, const Matrix& b) { return (a.adjoint() * b).trace(); }

double trace_norm_hermitian(const Matrix& m) {
  return hermitian_spectrum(m).cwiseAbs().sum();
}

namespace qubit {

Matrix pauli(char label) {
  Matrix p(2, 2);
  switch (label) {
    case 'I': p << 1, 0, 0, 1; break;
    case 'X': p << 0, 1, 1, 0; break;
    case 'Y': p << 0, -kI, kI, 0; break;
    case 'Z': p << 1, 0, 0, -1; break;
    default: throw PreconditionError(std::string("unknown Pauli label ") + label);
  }
  return p;
}

Matrix lowering() {
  Matrix p = Matrix::Zero(2, 2);
  p(0, 1) = 1.0;
  return p;
}

Matrix raising() { return lowering().transpose(); }

Matrix number() {
  Matrix p = Matrix::Zero(2, 2);
  p(1, 1) = 1.0;
  return p;
}

Matrix hole() {
  Matrix p = Matrix::Zero(2, 2);
  p(0, 0) = 1.0;
  return p;
}

}  // namespace qubit

}  // namespace superh
