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

#include "superh/qdb_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace superh {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_state(const Matrix& sigma) {
  if (sigma.rows() != sigma.cols() || sigma.rows() == 0)
    throw PreconditionError("sigma must be a non-empty square matrix");
  if (hermiticity_residual(sigma) > 1e-10 * std::max(1.0, sigma.cwiseAbs().maxCoeff()))
    throw PreconditionError("sigma is not Hermitian");
}

long side(const Matrix& s_mat) {
  long n = static_cast<long>(std::llround(std::sqrt(static_cast<double>(s_mat.rows()))));
  if (n * n != s_mat.rows() || s_mat.rows() != s_mat.cols())
    throw PreconditionError("superoperator is not square of dimension N^2");
  return n;
}

}  // namespace

GammaFactors gamma_factors(const Matrix& sigma, double s, double x) {
  require_state(sigma);
  if (s < 0.0 || s > 1.0) throw PreconditionError("s must lie in [0, 1]");
  try {
    return {hermitian_power(sigma, x * (1.0 - s)), hermitian_power(sigma, x * s)};
  } catch (const PreconditionError& e) {
    throw PreconditionError(std::string("singular or invalid sigma: ") + e.what());
  }
}

Matrix gamma_apply(const Matrix& sigma, double s, double x, const Matrix& a) {
  GammaFactors g = gamma_factors(sigma, s, x);
  return g.left * a * g.right;
}

Matrix gamma_conjugate(const Matrix& s_mat, const Matrix& sigma, double s, double x) {
  if (x == 0.0) return s_mat;
  GammaFactors fwd = gamma_factors(sigma, s, x);
  GammaFactors inv = gamma_factors(sigma, s, -x);
  Matrix right = kron_apply_right(s_mat, fwd.left, fwd.right.transpose());
  return kron_apply_left(inv.left, inv.right.transpose(), right);
}

QdbResidual qdb_residual(const SuperOpMatrix& s, const Matrix& sigma, double s_param) {
  if (side(s.mat) != sigma.rows()) throw PreconditionError("sigma dimension does not match S");
  QdbResidual r;
  r.s = s_param;
  const double norm_s = spectral_norm(s.mat);
  if (norm_s == 0.0) return r;
  GammaFactors g = gamma_factors(sigma, s_param, 1.0);
  Matrix a = kron_apply_right(s.mat, g.left, g.right.transpose());
  Matrix sd = s.mat.adjoint();
  Matrix b = kron_apply_left(g.left, g.right.transpose(), sd);
  r.qdb = spectral_norm(a - b) / norm_s;
  Matrix m = gamma_conjugate(s.mat, sigma, s_param, 0.5);
  const double norm_m = spectral_norm(m);
  Matrix md = m.adjoint();
  r.qdb2 = norm_m == 0.0 ? 0.0 : spectral_norm(m - md) / norm_m;
  return r;
}

ModularBasis modular_basis(const Matrix& sigma) {
  require_state(sigma);
  const long n = sigma.rows();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (sigma + sigma.adjoint()));
  if (es.info() != Eigen::Success) throw NumericalError("eigen-solver failed on sigma");
  const RealVector& p = es.eigenvalues();
  if (p.minCoeff() <= 0.0) throw PreconditionError("sigma is singular");
  ModularBasis mb;
  mb.dim = n;
  mb.eigvecs = es.eigenvectors();
  mb.energies = -p.array().log().matrix();
  const long n2 = n * n;
  mb.vecs.resize(n2, n2);
  mb.omega.resize(n2);
  mb.partner.resize(n2);
  const Matrix& u = mb.eigvecs;
  auto outer_vec = [&](long i, long j) {
    Vector out(n2);
    for (long a = 0; a < n; ++a)
      for (long b = 0; b < n; ++b) out(a * n + b) = u(a, i) * std::conj(u(b, j));
    return out;
  };
  std::vector<Vector> proj(n);
  for (long i = 0; i < n; ++i) proj[i] = outer_vec(i, i);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  for (long m = 0; m < n; ++m) {
    Vector v = Vector::Zero(n2);
    for (long i = 0; i < n; ++i)
      v += std::polar(inv_sqrt_n, 2.0 * kPi * static_cast<double>(m * i) / n) * proj[i];
    mb.vecs.col(m) = v;
    mb.omega[m] = 0.0;
    mb.partner[m] = (n - m) % n;
  }
  // Off-diagonal elements are indexed in (i, j) order after the n diagonal ones.
  std::vector<long> off_index(n2, -1);
  long col = n;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      if (i == j) continue;
      off_index[i * n + j] = col;
      mb.vecs.col(col) = outer_vec(i, j);
      mb.omega[col] = mb.energies(i) - mb.energies(j);
      ++col;
    }
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      if (i != j) mb.partner[off_index[i * n + j]] = off_index[j * n + i];

  // Group nearly equal frequencies.
  double wmax = 0.0;
  for (double w : mb.omega) wmax = std::max(wmax, std::abs(w));
  const double tol = 1e-9 * wmax;
  std::vector<long> order(n2);
  std::iota(order.begin(), order.end(), 0L);
  std::stable_sort(order.begin(), order.end(), [&](long a, long b) { return mb.omega[a] < mb.omega[b]; });
  mb.group.assign(n2, -1);
  int g = -1;
  double prev = 0.0;
  std::vector<double> sums;
  std::vector<long> counts;
  for (std::size_t k = 0; k < order.size(); ++k) {
    double w = mb.omega[order[k]];
    if (k == 0 || w - prev > tol) {
      ++g;
      sums.push_back(0.0);
      counts.push_back(0);
    }
    mb.group[order[k]] = g;
    sums[g] += w;
    ++counts[g];
    prev = w;
  }
  for (int k = 0; k <= g; ++k) mb.group_omega.push_back(sums[k] / counts[k]);
  mb.group_omega[mb.group[0]] = 0.0;
  return mb;
}

OperatorFrame frame_of(const HermitianOperatorBasis& basis) {
  if (basis.size() == 0) throw PreconditionError("empty operator basis");
  const Matrix& e0 = basis.elements[0];
  const long n = e0.rows();
  Matrix expect = Matrix::Identity(n, n) / std::sqrt(static_cast<double>(n));
  if ((e0 - expect).cwiseAbs().maxCoeff() > 1e-12)
    throw PreconditionError("operator basis must start with the normalized identity");
  OperatorFrame f;
  f.vecs.resize(n * n, static_cast<long>(basis.size()));
  for (std::size_t a = 0; a < basis.size(); ++a) f.vecs.col(static_cast<long>(a)) = vec(basis.elements[a]);
  f.supports = basis.supports;
  f.hermitian = true;
  return f;
}

OperatorFrame frame_of(const ModularBasis& basis) {
  OperatorFrame f;
  f.vecs = basis.vecs;
  f.hermitian = false;
  return f;
}

Matrix realign(const Matrix& s) {
  const long n = side(s);
  Matrix t(s.rows(), s.cols());
  for (long k = 0; k < n; ++k)
    for (long l = 0; l < n; ++l)
      for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) t(i * n + k, j * n + l) = s(i * n + j, k * n + l);
  return t;
}

namespace {

// Sum_ab K_ab G_b^dagger G_a.
Matrix anticommutator_operator(const Matrix& k, const Matrix& frame, long n) {
  Matrix a = Matrix::Zero(n, n);
  Matrix y = frame * k;
  for (long b = 0; b < k.cols(); ++b) a += unvec(frame.col(b)).adjoint() * unvec(y.col(b));
  return a;
}

}  // namespace

Matrix rebuild_lindblad(const CoefficientMatrix& c) {
  const long n = c.H.rows();
  Matrix out = realign(c.frame * c.K * c.frame.adjoint());
  Matrix a = anticommutator_operator(c.K, c.frame, n);
  Matrix id = Matrix::Identity(n, n);
  out -= 0.5 * (kron(a, id) + kron(id, a.transpose()));
  out += local_commutator(c.H);
  return out;
}

CoefficientMatrix gks_matrix(const SuperOpMatrix& s, const OperatorFrame& frame, double tol,
                             bool require_lindblad_form) {
  const long n = side(s.mat);
  const long m = frame.vecs.cols();
  if (frame.vecs.rows() != n * n) throw PreconditionError("frame dimension does not match S");
  if (m < 1) throw PreconditionError("empty frame");
  Matrix t = realign(s.mat);
  Matrix c = frame.vecs.adjoint() * t * frame.vecs;
  const double t_norm = t.norm();
  CoefficientMatrix out;
  out.span_residual = t_norm == 0.0 ? 0.0 : (t - frame.vecs * c * frame.vecs.adjoint()).norm() / t_norm;
  if (out.span_residual > tol)
    throw NumericalError("operator frame does not span the superoperator (residual " +
                         std::to_string(out.span_residual) + ")");
  out.frame = frame.vecs.rightCols(m - 1);
  out.K = c.bottomRightCorner(m - 1, m - 1);
  if (!frame.supports.empty())
    out.supports.assign(frame.supports.begin() + 1, frame.supports.end());
  out.hermitian_basis = frame.hermitian;

  const double sqrt_n = std::sqrt(static_cast<double>(n));
  Matrix id = Matrix::Identity(n, n);
  Vector col0 = c.col(0).tail(m - 1);
  Vector row0 = c.row(0).tail(m - 1).adjoint();
  out.left = unvec(out.frame * col0) / sqrt_n + c(0, 0) / (2.0 * n) * id;
  out.right = unvec(out.frame * row0).adjoint() / sqrt_n + c(0, 0) / (2.0 * n) * id;
  Matrix h = 0.5 * kI * (out.left - out.left.adjoint());
  h -= (h.trace() / static_cast<double>(n)) * id;
  out.H = h;

  const double s_norm = s.mat.norm();
  out.lindblad_residual = s_norm == 0.0 ? 0.0 : (rebuild_lindblad(out) - s.mat).norm() / s_norm;
  if (require_lindblad_form && out.lindblad_residual > tol)
    throw NumericalError("superoperator is not of Lindblad form (residual " +
                         std::to_string(out.lindblad_residual) + ")");
  return out;
}

double off_diagonal_mass(const Matrix& k) {
  if (k.size() == 0) return 0.0;
  const double scale = k.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  Matrix off = k;
  off.diagonal().setZero();
  return off.cwiseAbs().maxCoeff() / scale;
}

double locality_violation(const CoefficientMatrix& c, const Lattice& lattice, int k) {
  if (c.supports.size() != static_cast<std::size_t>(c.size()))
    throw PreconditionError("coefficient matrix carries no support metadata");
  double worst = 0.0;
  for (long a = 0; a < c.size(); ++a)
    for (long b = 0; b < c.size(); ++b) {
      Sites joint = c.supports[a];
      joint.insert(joint.end(), c.supports[b].begin(), c.supports[b].end());
      std::sort(joint.begin(), joint.end());
      joint.erase(std::unique(joint.begin(), joint.end()), joint.end());
      if (lattice.window_span(joint) > k) worst = std::max(worst, std::abs(c.K(a, b)));
    }
  return worst;
}

CanonicalForm canonical_form(const SuperOpMatrix& s, const Matrix& sigma, double tol) {
  CanonicalForm cf;
  cf.basis = modular_basis(sigma);
  const ModularBasis& mb = cf.basis;
  CoefficientMatrix cm = gks_matrix(s, frame_of(mb), 1e-9, true);
  const Matrix& k = cm.K;
  const long m = k.rows();
  const double kscale = std::max(k.cwiseAbs().maxCoeff(), 1e-300);

  // K index a corresponds to modular element a + 1.
  const int ngroups = static_cast<int>(mb.group_omega.size());
  std::vector<std::vector<long>> members(ngroups);
  for (long a = 0; a < m; ++a) members[mb.group[a + 1]].push_back(a);
  const int zero_group = mb.group[0];

  Matrix w = Matrix::Zero(m, m);
  std::vector<double> new_omega(m, 0.0);
  std::vector<long> new_partner(m, -1);
  long next = 0;
  for (int g = 0; g < ngroups; ++g) {
    const auto& idx = members[g];
    if (idx.empty()) continue;
    const long sz = static_cast<long>(idx.size());
    if (g == zero_group) {
      // Rotate to Hermitian elements, then diagonalize the real part.
      std::vector<long> pos(m, -1);
      for (long i = 0; i < sz; ++i) pos[idx[i]] = i;
      Matrix q = Matrix::Zero(sz, sz);
      long qc = 0;
      const double r2 = 1.0 / std::sqrt(2.0);
      for (long i = 0; i < sz; ++i) {
        long p = pos[mb.partner[idx[i] + 1] - 1];
        if (p < 0) throw NumericalError("modular pairing leaves the zero-frequency group");
        if (p == i) {
          q(i, qc++) = 1.0;
        } else if (i < p) {
          q(i, qc) = r2;
          q(p, qc++) = r2;
          q(i, qc) = kI * r2;
          q(p, qc++) = -kI * r2;
        }
      }
      Matrix kg(sz, sz);
      for (long i = 0; i < sz; ++i)
        for (long j = 0; j < sz; ++j) kg(i, j) = k(idx[i], idx[j]);
      Matrix kh = q.adjoint() * kg * q;
      cf.zero_group_imag = std::max(cf.zero_group_imag, kh.imag().cwiseAbs().maxCoeff() / kscale);
      RealMatrix kr = 0.5 * (kh.real() + kh.real().transpose());
      Eigen::SelfAdjointEigenSolver<RealMatrix> es(kr);
      if (es.info() != Eigen::Success) throw NumericalError("eigen-solver failed in canonical_form");
      Matrix rot = q * es.eigenvectors().cast<cplx>();
      for (long c = 0; c < sz; ++c) {
        for (long i = 0; i < sz; ++i) w(idx[i], next) = rot(i, c);
        new_omega[next] = 0.0;
        new_partner[next] = next;
        ++next;
      }
      continue;
    }
    if (mb.group_omega[g] < 0.0) continue;  // handled with its positive partner
    const int pg = mb.group[mb.partner[idx[0] + 1]];
    const auto& pidx = members[pg];
    if (pidx.size() != idx.size()) throw NumericalError("modular partner groups differ in size");
    Matrix kg(sz, sz);
    for (long i = 0; i < sz; ++i)
      for (long j = 0; j < sz; ++j) kg(i, j) = k(idx[i], idx[j]);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (kg + kg.adjoint()));
    if (es.info() != Eigen::Success) throw NumericalError("eigen-solver failed in canonical_form");
    const Matrix& v = es.eigenvectors();
    for (long c = 0; c < sz; ++c) {
      const long mine = next;
      const long theirs = next + 1;
      for (long i = 0; i < sz; ++i) {
        w(idx[i], mine) = v(i, c);
        w(mb.partner[idx[i] + 1] - 1, theirs) = std::conj(v(i, c));
      }
      new_omega[mine] = mb.group_omega[g];
      new_omega[theirs] = mb.group_omega[pg];
      new_partner[mine] = theirs;
      new_partner[theirs] = mine;
      next += 2;
    }
  }
  if (next != m) throw NumericalError("canonical_form: rotation does not cover the basis");

  Matrix kp = w.adjoint() * k * w;
  cf.off_diagonal = off_diagonal_mass(kp);
  if (cf.off_diagonal > tol)
    throw PreconditionError("coefficient matrix is not diagonal in any modular basis (off-diagonal " +
                            std::to_string(cf.off_diagonal) + "); not detailed balanced for sigma");
  std::vector<double> gam(m);
  double gmax = 0.0;
  for (long a = 0; a < m; ++a) {
    double d = kp(a, a).real();
    if (d < -tol * kscale) throw PreconditionError("negative diagonal in the canonical coefficients");
    gam[a] = std::max(d, 0.0) * std::exp(new_omega[a] / 2.0);
    gmax = std::max(gmax, gam[a]);
  }
  std::vector<long> kept;
  std::vector<long> where(m, -1);
  for (long a = 0; a < m; ++a)
    if (gam[a] > 1e-10 * gmax) {
      where[a] = static_cast<long>(kept.size());
      kept.push_back(a);
    }
  Matrix tail = mb.vecs.rightCols(m);
  cf.ops.resize(tail.rows(), static_cast<long>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const long a = kept[i];
    cf.ops.col(static_cast<long>(i)) = tail * w.col(a);
    cf.omega.push_back(new_omega[a]);
    cf.gamma.push_back(gam[a]);
    cf.partner.push_back(where[new_partner[a]]);
    if (gmax > 0.0)
      cf.pairing_residual = std::max(cf.pairing_residual, std::abs(gam[a] - gam[new_partner[a]]) / gmax);
  }
  if (cf.pairing_residual > tol)
    throw PreconditionError("partner rates differ (relative " + std::to_string(cf.pairing_residual) +
                            "); generator is not detailed balanced");
  return cf;
}

SuperOpMatrix deformed_family(const SuperOpMatrix& s, const Matrix& sigma, double s_param, double x) {
  return {gamma_conjugate(s.mat, sigma, s_param, x), "deformed x=" + std::to_string(x)};
}

double commutator_check(const Matrix& c) {
  const double nc = spectral_norm(c);
  if (nc == 0.0) return 0.0;
  Matrix cc = c.conjugate();
  return spectral_norm(c * cc - cc * c) / (nc * nc);
}

}  // namespace superh
