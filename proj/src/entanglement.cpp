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

#include "superh/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "superh/lindblad_model.hpp"

namespace superh {

namespace {

void check_state(const Matrix& sigma, const Lattice& lattice) {
  if (sigma.rows() != lattice.dim() || sigma.cols() != lattice.dim())
    throw PreconditionError("state dimension does not match lattice");
}

// Interleaved pair index for each (originals, fictitious) index.
std::vector<long> interleave_map(const Lattice& lattice) {
  const int n = lattice.n();
  const long d = lattice.d();
  const long big = lattice.dim();
  std::vector<long> map(big * big);
  std::vector<long> o(n), f(n);
  for (long idx = 0; idx < big * big; ++idx) {
    long io = idx / big;
    long ifc = idx % big;
    for (int s = n - 1; s >= 0; --s) {
      o[s] = io % d;
      io /= d;
      f[s] = ifc % d;
      ifc /= d;
    }
    long out = 0;
    for (int s = 0; s < n; ++s) out = (out * d + o[s]) * d + f[s];
    map[idx] = out;
  }
  return map;
}

double entropy_of(const RealVector& p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p(i) > 1e-14) s -= p(i) * std::log(p(i));
  return s;
}

}  // namespace

DoubledState vectorize_state(const Matrix& sigma, const Lattice& lattice) {
  check_state(sigma, lattice);
  Matrix root;
  try {
    root = hermitian_power(sigma, 0.5);
  } catch (const PreconditionError& e) {
    throw PreconditionError(std::string("sigma is not PSD: ") + e.what());
  }
  Vector v = vec(root);
  auto map = interleave_map(lattice);
  DoubledState st;
  st.d = lattice.d();
  st.pairs = Lattice(lattice.n(), lattice.d() * lattice.d());
  st.psi.resize(v.size());
  for (long i = 0; i < v.size(); ++i) st.psi(map[i]) = v(i);
  return st;
}

Vector deinterleave(const DoubledState& state) {
  const Lattice lattice(state.pairs.n(), state.d);
  auto map = interleave_map(lattice);
  Vector v(state.psi.size());
  for (long i = 0; i < v.size(); ++i) v(i) = state.psi(map[i]);
  return v;
}

double purification_residual(const DoubledState& state, const Matrix& sigma) {
  Matrix x = unvec(deinterleave(state));
  return (x * x.adjoint() - sigma).cwiseAbs().maxCoeff();
}

double von_neumann_entropy(const Matrix& rho) { return entropy_of(hermitian_spectrum(rho)); }

double mutual_information(const Matrix& sigma, const Sites& a, const Lattice& lattice) {
  check_state(sigma, lattice);
  if (a.empty() || static_cast<int>(a.size()) >= lattice.n())
    throw PreconditionError("mutual_information needs a nonempty proper subset");
  Sites b;
  for (int s = 0; s < lattice.n(); ++s)
    if (std::find(a.begin(), a.end(), s) == a.end()) b.push_back(s);
  if (b.size() + a.size() != static_cast<std::size_t>(lattice.n()))
    throw PreconditionError("invalid partition");
  return von_neumann_entropy(partial_trace(sigma, a, lattice)) +
         von_neumann_entropy(partial_trace(sigma, b, lattice)) - von_neumann_entropy(sigma);
}

EntanglementReport op_space_entropy(const Matrix& sigma, const Sites& cut, const Lattice& lattice) {
  check_state(sigma, lattice);
  if (cut.empty() || static_cast<int>(cut.size()) >= lattice.n())
    throw PreconditionError("cut must be a nonempty proper subset");
  if (lattice.window_span(cut) != static_cast<int>(cut.size()))
    throw PreconditionError("cut must be a contiguous interval");
  DoubledState st = vectorize_state(sigma, lattice);
  Matrix m = reshape_bipartite(st.psi, cut, st.pairs);
  Eigen::BDCSVD<Matrix> svd(m);
  EntanglementReport rep;
  rep.cut = cut;
  rep.schmidt = svd.singularValues();
  rep.op_entropy = entropy_of(rep.schmidt.array().square().matrix());
  rep.mutual_information = mutual_information(sigma, cut, lattice);
  rep.mi_bound_ok = rep.mutual_information <= 2.0 * rep.op_entropy + 1e-8;
  return rep;
}

namespace {

// Left-to-right SVD sweep keeping at most `bond` singular values per bond.
// Returns the reconstructed (unnormalized) state vector.
Vector truncate_mps(const Vector& psi, int n, long q, int bond) {
  std::vector<Matrix> cores;  // core k: (left * q) x right
  Matrix rest = Eigen::Map<const Matrix>(psi.data(), 1, psi.size());
  // rest has rows = left bond, cols = remaining physical dims, row-major over sites.
  long left = 1;
  for (int k = 0; k < n - 1; ++k) {
    const long remaining = rest.cols() / q;
    // Rows (left, s_k), columns (s_{k+1..}).
    Matrix m(left * q, remaining);
    for (long l = 0; l < left; ++l)
      for (long s = 0; s < q; ++s)
        for (long r = 0; r < remaining; ++r) m(l * q + s, r) = rest(l, s * remaining + r);
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const long keep = std::min<long>(bond, svd.singularValues().size());
    cores.push_back(svd.matrixU().leftCols(keep));
    rest = svd.singularValues().head(keep).cast<cplx>().asDiagonal() * svd.matrixV().leftCols(keep).adjoint();
    left = keep;
  }
  // Contract back.
  Matrix acc = Matrix::Identity(1, 1);  // rows: physical prefix, cols: bond
  for (const auto& core : cores) {
    const long bl = acc.cols();
    const long br = core.cols();
    Matrix next(acc.rows() * q, br);
    for (long s = 0; s < q; ++s) {
      Matrix us(bl, br);
      for (long l = 0; l < bl; ++l) us.row(l) = core.row(l * q + s);
      Matrix part = acc * us;
      for (long p = 0; p < acc.rows(); ++p) next.row(p * q + s) = part.row(p);
    }
    acc = std::move(next);
  }
  Matrix full = acc * rest;  // rows: prefix, cols: last site
  Vector out(full.size());
  for (long p = 0; p < full.rows(); ++p)
    for (long s = 0; s < full.cols(); ++s) out(p * full.cols() + s) = full(p, s);
  return out;
}

}  // namespace

std::vector<TruncationPoint> truncation_curve(const Matrix& sigma, const Lattice& lattice,
                                              const std::vector<int>& bond_dims) {
  check_state(sigma, lattice);
  for (std::size_t i = 0; i < bond_dims.size(); ++i) {
    if (bond_dims[i] < 1) throw PreconditionError("bond dimension must be at least 1");
    if (i > 0 && bond_dims[i] < bond_dims[i - 1]) throw PreconditionError("bond dimensions must be ascending");
  }
  DoubledState st = vectorize_state(sigma, lattice);
  const long q = st.pairs.d();
  std::vector<TruncationPoint> curve;
  for (int bond : bond_dims) {
    DoubledState tr = st;
    tr.psi = truncate_mps(st.psi, lattice.n(), q, bond);
    tr.psi.normalize();
    TruncationPoint pt;
    pt.bond_dim = bond;
    cplx ov = tr.psi.dot(st.psi);
    pt.overlap = std::min(1.0, std::abs(ov));
    // Align the global phase so the distance is the smallest over phases.
    Vector aligned = tr.psi * (std::abs(ov) > 0 ? ov / std::abs(ov) : cplx(1.0));
    pt.vec_distance = (st.psi - aligned).norm();
    Matrix x = unvec(deinterleave(tr));
    Matrix psi_op = x * x.adjoint();
    pt.trace_distance = trace_norm_hermitian(sigma - psi_op);
    pt.sound_bound = 2.0 * std::sqrt(std::max(0.0, 1.0 - pt.overlap * pt.overlap));
    pt.sqrt2_bound = std::sqrt(2.0) * pt.vec_distance;
    curve.push_back(pt);
  }
  return curve;
}

}  // namespace superh
