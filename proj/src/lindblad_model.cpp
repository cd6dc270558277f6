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

#include "superh/lindblad_model.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace superh {

namespace {

using RowMajorMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

long side_of(long n2) {
  long n = static_cast<long>(std::llround(std::sqrt(static_cast<double>(n2))));
  if (n * n != n2) throw PreconditionError("vector length is not a perfect square");
  return n;
}

Matrix sub_block(const Matrix& m, const std::vector<long>& idx) {
  const long k = static_cast<long>(idx.size());
  Matrix out(k, k);
  for (long j = 0; j < k; ++j)
    for (long i = 0; i < k; ++i) out(i, j) = m(idx[i], idx[j]);
  return out;
}

}  // namespace

Vector vec(const Matrix& x) {
  RowMajorMatrix r = x;
  return Eigen::Map<const Vector>(r.data(), r.size());
}

Matrix unvec(const Vector& v) {
  const long n = side_of(v.size());
  return Eigen::Map<const RowMajorMatrix>(v.data(), n, n);
}

Matrix sandwich(const Matrix& a, const Matrix& b) { return kron(a, b.transpose()); }

Lattice doubled(const Lattice& lattice) { return Lattice(2 * lattice.n(), lattice.d()); }

Sites doubled_sites(const Sites& sites, const Lattice& lattice) {
  Sites out(sites);
  for (int s : sites) out.push_back(s + lattice.n());
  return out;
}

Matrix kron_apply_left(const Matrix& a, const Matrix& b, const Matrix& m) {
  const long p = a.rows();
  const long q = b.rows();
  if (a.cols() * b.cols() != m.rows()) throw PreconditionError("kron_apply_left: size mismatch");
  Matrix out(p * q, m.cols());
  const Matrix bt = b.transpose();
  for (long c = 0; c < m.cols(); ++c) {
    Eigen::Map<const RowMajorMatrix> x(m.col(c).data(), a.cols(), b.cols());
    RowMajorMatrix y = a * x * bt;
    out.col(c) = Eigen::Map<const Vector>(y.data(), y.size());
  }
  return out;
}

Matrix kron_apply_right(const Matrix& m, const Matrix& a, const Matrix& b) {
  Matrix mt = m.transpose();
  return kron_apply_left(a.transpose(), b.transpose(), mt).transpose();
}

Matrix superop_apply(const Matrix& s, const Matrix& x) { return unvec(s * vec(x)); }

double one_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

Matrix local_dissipator(const Matrix& l) {
  const long d = l.rows();
  const Matrix ld = l.adjoint() * l;
  const Matrix id = Matrix::Identity(d, d);
  return kron(l, l.conjugate()) - 0.5 * kron(ld, id) - 0.5 * kron(id, ld.transpose());
}

Matrix local_commutator(const Matrix& h) {
  const Matrix id = Matrix::Identity(h.rows(), h.rows());
  return -kI * (kron(h, id) - kron(id, h.transpose()));
}

SuperOpMatrix assemble(const LindbladSpec& spec, long max_superop_dim) {
  const Lattice& lat = spec.lattice;
  const long n2 = lat.dim() * lat.dim();
  if (n2 > max_superop_dim)
    throw PreconditionError("superoperator dimension " + std::to_string(n2) + " exceeds cap " +
                            std::to_string(max_superop_dim));
  const Lattice dl = doubled(lat);
  SuperOpMatrix out{Matrix::Zero(n2, n2), "assemble"};
  for (const auto& j : spec.jumps)
    embed_add(out.mat, local_dissipator(j.op), doubled_sites(j.sites, lat), dl, j.weight);
  for (const auto& h : spec.hamiltonian)
    embed_add(out.mat, local_commutator(h.op), doubled_sites(h.sites, lat), dl);
  return out;
}

Matrix apply_lindbladian(const LindbladSpec& spec, const Matrix& rho) {
  const Lattice& lat = spec.lattice;
  Matrix out = Matrix::Zero(lat.dim(), lat.dim());
  for (const auto& j : spec.jumps) {
    Matrix l = embed(j.op, j.sites, lat);
    Matrix ld = l.adjoint() * l;
    out += j.weight * (l * rho * l.adjoint() - 0.5 * (ld * rho + rho * ld));
  }
  for (const auto& h : spec.hamiltonian) {
    Matrix hm = embed(h.op, h.sites, lat);
    out += -kI * (hm * rho - rho * hm);
  }
  return out;
}

double default_zero_threshold(const Matrix& s) { return 1e-8 * one_norm(s); }

SpectrumReport spectrum_and_gap(const SuperOpMatrix& s, double zero_threshold) {
  SpectrumReport rep;
  rep.zero_threshold = zero_threshold < 0.0 ? default_zero_threshold(s.mat) : zero_threshold;
  rep.eigenvalues = general_spectrum(s.mat);
  rep.max_real = -std::numeric_limits<double>::infinity();
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& z : rep.eigenvalues) {
    rep.max_real = std::max(rep.max_real, z.real());
    if (std::abs(z) <= rep.zero_threshold) {
      ++rep.zero_count;
    } else {
      gap = std::min(gap, std::abs(z.real()));
    }
  }
  if (rep.eigenvalues.empty()) rep.max_real = 0.0;
  rep.no_nonzero = !std::isfinite(gap);
  rep.gap = rep.no_nonzero ? 0.0 : gap;
  rep.left_half_plane = rep.max_real <= 1e-9 * std::max(1.0, one_norm(s.mat));
  return rep;
}

SteadyStateReport steady_states(const SuperOpMatrix& s, double zero_threshold) {
  SteadyStateReport rep;
  rep.zero_threshold = zero_threshold < 0.0 ? default_zero_threshold(s.mat) : zero_threshold;
  const long n2 = s.mat.rows();
  std::vector<Vector> kernel;
  for (const auto& block : coupled_blocks(s.mat)) {
    const long m = static_cast<long>(block.size());
    Matrix sub = sub_block(s.mat, block);
    Eigen::BDCSVD<Matrix> svd(sub, Eigen::ComputeFullV);
    const RealVector& sv = svd.singularValues();
    for (long c = 0; c < m; ++c) {
      if (sv(c) > rep.zero_threshold) continue;
      Vector v = Vector::Zero(n2);
      for (long i = 0; i < m; ++i) v(block[i]) = svd.matrixV()(i, c);
      kernel.push_back(std::move(v));
    }
  }
  rep.kernel_dim = static_cast<long>(kernel.size());
  if (rep.kernel_dim == 0)
    throw NumericalError("Lindbladian kernel is empty at the zero threshold");
  rep.unique = rep.kernel_dim == 1;

  // The Hermitian elements of a kernel closed under adjoint form a real
  // space of the same dimension; pick a basis by Gram-Schmidt.
  std::vector<Matrix> herm;
  for (const auto& v : kernel) {
    Matrix x = unvec(v);
    for (const Matrix& cand : {Matrix(0.5 * (x + x.adjoint())), Matrix(-0.5 * kI * (x - x.adjoint()))}) {
      Matrix r = cand;
      for (const auto& h : herm) r -= hs_inner(h, r).real() * h;
      double nr = r.norm();
      if (nr > 1e-6 * std::max(1.0, cand.norm())) herm.push_back(r / nr);
      if (static_cast<long>(herm.size()) == rep.kernel_dim) break;
    }
    if (static_cast<long>(herm.size()) == rep.kernel_dim) break;
  }
  for (auto& h : herm) {
    cplx tr = h.trace();
    if (std::abs(tr) > 1e-10) h /= tr;
    RealVector w = hermitian_spectrum(h);
    rep.min_eigenvalue.push_back(w.size() ? w(0) : 0.0);
    rep.states.push_back(std::move(h));
  }
  return rep;
}

Matrix evolve(const SuperOpMatrix& s, const Matrix& rho0, double t) {
  if (t < 0.0) throw PreconditionError("evolve: negative time");
  const long n2 = s.mat.rows();
  if (rho0.rows() * rho0.cols() != n2) throw PreconditionError("evolve: state dimension mismatch");
  Vector x = vec(rho0);
  if (t == 0.0) return rho0;
  Vector y = Vector::Zero(n2);
  for (const auto& block : coupled_blocks(s.mat)) {
    const long m = static_cast<long>(block.size());
    Vector xb(m);
    for (long i = 0; i < m; ++i) xb(i) = x(block[i]);
    Matrix sub = sub_block(s.mat, block);
    Vector yb;
    bool done = false;
    if (m > 1) {
      Eigen::ComplexEigenSolver<Matrix> es(sub, true);
      if (es.info() == Eigen::Success) {
        const Matrix& v = es.eigenvectors();
        Eigen::FullPivLU<Matrix> lu(v);
        const double scale = std::max(1.0, one_norm(sub));
        if (lu.isInvertible() && lu.rcond() > 1e-10) {
          Matrix vinv = lu.inverse();
          Matrix recon = v * es.eigenvalues().asDiagonal() * vinv;
          if ((recon - sub).cwiseAbs().maxCoeff() <= 1e-12 * scale) {
            Vector ex = (es.eigenvalues() * t).array().exp().matrix();
            yb = v * ex.asDiagonal() * (vinv * xb);
            done = true;
          }
        }
      }
    }
    if (!done) {
      Matrix st = sub * t;
      yb = st.exp() * xb;  // scaling and squaring
    }
    for (long i = 0; i < m; ++i) y(block[i]) = yb(i);
  }
  Matrix out = unvec(y);
  const double scale = std::max(1.0, std::abs(rho0.trace()));
  if (std::abs(out.trace() - rho0.trace()) > 1e-9 * scale || hermiticity_residual(out) > 1e-9 * scale)
    throw NumericalError("evolve: trace or Hermiticity not preserved");
  return out;
}

bool ValidationReport::all_ok() const {
  return std::all_of(items.begin(), items.end(), [](const ValidationItem& i) { return i.ok; });
}

ValidationReport validate(const LindbladSpec& spec, std::uint64_t seed) {
  ValidationReport rep;
  const Lattice& lat = spec.lattice;
  auto support_ok = [&](const Sites& sites) {
    int span = lat.window_span(sites);
    return span == static_cast<int>(sites.size()) && span <= spec.k;
  };
  for (std::size_t j = 0; j < spec.jumps.size(); ++j) {
    const auto& t = spec.jumps[j];
    const int ti = static_cast<int>(j);
    rep.items.push_back({"jump_weight_positive", ti, t.weight > 0.0, t.weight});
    double tr = std::abs(t.op.trace());
    rep.items.push_back({"jump_traceless", ti, tr <= 1e-10, tr});
    rep.items.push_back({"jump_support_contiguous", ti, support_ok(t.sites),
                         static_cast<double>(lat.window_span(t.sites))});
    if (t.partner >= 0) {
      double res = std::numeric_limits<double>::infinity();
      if (t.partner < static_cast<int>(spec.jumps.size())) {
        const auto& p = spec.jumps[t.partner];
        Matrix a = embed(t.op, t.sites, lat);
        Matrix b = embed(p.op, p.sites, lat);
        res = (b - a.adjoint()).cwiseAbs().maxCoeff();
      }
      rep.items.push_back({"jump_partner_adjoint", ti, res <= 1e-10, res});
    }
  }
  for (std::size_t h = 0; h < spec.hamiltonian.size(); ++h) {
    const auto& t = spec.hamiltonian[h];
    const int ti = static_cast<int>(h);
    double res = hermiticity_residual(t.op);
    rep.items.push_back({"hamiltonian_hermitian", ti, res <= 1e-10, res});
    rep.items.push_back({"hamiltonian_support_contiguous", ti, support_ok(t.sites),
                         static_cast<double>(lat.window_span(t.sites))});
  }
  // Probes through the jump form directly, so this works beyond the dense cap.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  double worst_trace = 0.0;
  double worst_herm = 0.0;
  for (int probe = 0; probe < 5; ++probe) {
    Matrix a(lat.dim(), lat.dim());
    for (long i = 0; i < a.size(); ++i) a.data()[i] = cplx(g(rng), g(rng));
    a = (a + a.adjoint()).eval();
    Matrix la = apply_lindbladian(spec, a);
    worst_trace = std::max(worst_trace, std::abs(la.trace()) / std::max(1.0, a.norm()));
    worst_herm = std::max(worst_herm, hermiticity_residual(la) / std::max(1.0, a.norm()));
  }
  rep.items.push_back({"trace_preserving", -1, worst_trace <= 1e-10, worst_trace});
  rep.items.push_back({"hermiticity_preserving", -1, worst_herm <= 1e-10, worst_herm});
  return rep;
}

}  // namespace superh
