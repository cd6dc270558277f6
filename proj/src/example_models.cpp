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

#include "superh/example_models.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace superh {

namespace {

constexpr double kPi = 3.14159265358979323846;

int bit(long x, int site, int n) { return static_cast<int>((x >> (n - 1 - site)) & 1L); }

double classical_energy(const ClassicalModelParams& p, long x) {
  double e = 0.0;
  for (int i = 0; i < p.n; ++i) {
    int xi = bit(x, i, p.n);
    e += (p.eps[i] - p.mu) * xi + p.u * xi * bit(x, (i + 1) % p.n, p.n);
  }
  return e;
}

}  // namespace

ClassicalModelParams ClassicalModelParams::uniform(int n, double eps, double mu, double u, double beta) {
  ClassicalModelParams p;
  p.n = n;
  p.eps.assign(n, eps);
  p.mu = mu;
  p.u = u;
  p.beta = beta;
  return p;
}

double ClassicalModelParams::weight(int k, int b) const { return gamma.empty() ? 1.0 : gamma[k][b]; }

void ClassicalModelParams::check() const {
  if (n < 3) throw PreconditionError("classical model needs n >= 3");
  if (static_cast<int>(eps.size()) != n) throw PreconditionError("eps must have n entries");
  if (!gamma.empty() && static_cast<int>(gamma.size()) != n)
    throw PreconditionError("gamma must have n rows of 3 weights");
  for (const auto& row : gamma)
    for (double g : row)
      if (!(g >= 0.0)) throw PreconditionError("gamma weights must be non-negative");
}

double classical_omega(const ClassicalModelParams& p, int k, int b) { return -(p.eps[k] - p.mu) - p.u * b; }

Matrix classical_jump_local(int b) {
  if (b < 0 || b > 2) throw PreconditionError("b must be 0, 1 or 2");
  const Matrix proj[2] = {qubit::hole(), qubit::number()};
  Matrix out = Matrix::Zero(8, 8);
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      if (a + c == b) out += kron(kron(proj[a], qubit::lowering()), proj[c]);
  return out;
}

Matrix classical_gibbs(const ClassicalModelParams& p) {
  p.check();
  if (p.n > 14) throw PreconditionError("classical state enumeration capped at n <= 14");
  const long dim = 1L << p.n;
  RealVector w(dim);
  double emin = std::numeric_limits<double>::infinity();
  for (long x = 0; x < dim; ++x) emin = std::min(emin, classical_energy(p, x));
  for (long x = 0; x < dim; ++x) w(x) = std::exp(-p.beta * (classical_energy(p, x) - emin));
  w /= w.sum();
  return w.cast<cplx>().asDiagonal();
}

ClassicalModel build_classical(const ClassicalModelParams& p) {
  p.check();
  ClassicalModel m;
  m.spec.lattice = Lattice(p.n, 2);
  m.spec.k = 3;
  for (int k = 0; k < p.n; ++k) {
    Sites sites = {(k + p.n - 1) % p.n, k, (k + 1) % p.n};
    for (int b = 0; b < 3; ++b) {
      const double g = p.weight(k, b);
      if (g == 0.0) continue;
      const double w = p.beta * classical_omega(p, k, b);
      Matrix l = classical_jump_local(b);
      const int idx = static_cast<int>(m.spec.jumps.size());
      m.spec.jumps.push_back({l, sites, g * std::exp(-w / 2.0), idx + 1});
      m.spec.jumps.push_back({l.adjoint(), sites, g * std::exp(w / 2.0), idx});
      m.labels.push_back({k, b});
    }
  }
  m.sigma = classical_gibbs(p);
  return m;
}

RateMatrix classical_rate_matrix(const ClassicalModelParams& p) {
  p.check();
  if (p.n > 14) throw PreconditionError("rate matrix enumeration capped at n <= 14");
  const long dim = 1L << p.n;
  RateMatrix r;
  r.rates = RealMatrix::Zero(dim, dim);
  r.exit = RealVector::Zero(dim);
  for (long x = 0; x < dim; ++x) {
    for (int k = 0; k < p.n; ++k) {
      const int b = bit(x, (k + p.n - 1) % p.n, p.n) + bit(x, (k + 1) % p.n, p.n);
      const double w = p.beta * classical_omega(p, k, b);
      const double g = p.weight(k, b);
      const double f = bit(x, k, p.n) == 1 ? g * std::exp(-w / 2.0) : g * std::exp(w / 2.0);
      const long y = x ^ (1L << (p.n - 1 - k));
      r.rates(y, x) += f;
      r.exit(x) += f;
    }
    r.rates(x, x) = -r.exit(x);
  }
  return r;
}

UniquenessReport uniqueness_report(const ClassicalModelParams& p, double t) {
  if (p.n > 6) throw PreconditionError("uniqueness_report is dense; n <= 6");
  UniquenessReport rep;
  for (int k = 0; k < p.n; ++k)
    for (int b = 0; b < 3; ++b)
      if (!(p.weight(k, b) > 0.0)) rep.all_weights_positive = false;
  RateMatrix r = classical_rate_matrix(p);
  RealMatrix prop = (r.rates * t).exp();
  rep.min_propagator_entry = prop.minCoeff();
  rep.propagator_positive = rep.min_propagator_entry > 0.0;

  ClassicalModel m = build_classical(p);
  SuperOpMatrix s = assemble(m.spec);
  rep.kernel_dim = steady_states(s).kernel_dim;

  const long dim = 1L << p.n;
  std::vector<long> coh;
  for (long x = 0; x < dim; ++x)
    for (long y = 0; y < dim; ++y)
      if (x != y) coh.push_back(x * dim + y);
  for (long c : coh) {
    double off = s.mat.col(c).cwiseAbs().sum() - std::abs(s.mat(c, c));
    double diag = std::abs(s.mat(c, c));
    rep.worst_dominance = std::max(rep.worst_dominance, diag > 0.0 ? off / diag : std::numeric_limits<double>::infinity());
  }
  rep.dominance_ok = rep.worst_dominance < 1.0;
  Matrix block(coh.size(), coh.size());
  for (std::size_t j = 0; j < coh.size(); ++j)
    for (std::size_t i = 0; i < coh.size(); ++i) block(i, j) = s.mat(coh[i], coh[j]);
  auto spec = general_spectrum(block);
  rep.max_real_coherence = -std::numeric_limits<double>::infinity();
  for (const auto& z : spec) rep.max_real_coherence = std::max(rep.max_real_coherence, z.real());
  rep.coherence_decays = rep.max_real_coherence < 0.0;
  return rep;
}

RealMatrix circulant(int n, double g0, double g1) {
  if (n < 1) throw PreconditionError("circulant needs n >= 1");
  RealMatrix c = RealMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    c(i, i) += g0;
    c(i, (i + 1) % n) += g1;
    c(i, (i + n - 1) % n) += g1;
  }
  return c;
}

SingleParticleModel single_particle(const FermionParams& p) {
  if (p.n < 1) throw PreconditionError("fermionic model needs n >= 1");
  SingleParticleModel m{circulant(p.n, p.gin0, p.gin1), circulant(p.n, p.gout0, p.gout1)};
  return m;
}

namespace {

// Eigenvalue of a symmetric circulant for the mode exp(2 pi i k j / n).
RealVector circulant_eigenvalues(const RealMatrix& c) {
  const long n = c.rows();
  RealVector d(n);
  for (long k = 0; k < n; ++k) {
    cplx s = 0.0;
    for (long j = 0; j < n; ++j) s += c(0, j) * std::polar(1.0, 2.0 * kPi * k * j / n);
    d(k) = s.real();
  }
  return d;
}

// Fourier matrix U_{jk} = exp(2 pi i k j / n) / sqrt(n).
Matrix fourier(long n) {
  Matrix u(n, n);
  for (long j = 0; j < n; ++j)
    for (long k = 0; k < n; ++k) u(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(n)), 2.0 * kPi * k * j / n);
  return u;
}

void require_circulant_psd(const ModeReport& r) {
  if (r.d_in.minCoeff() < -1e-12 || r.d_out.minCoeff() < -1e-12)
    throw PreconditionError("rate circulant is not positive semi-definite");
}

}  // namespace

ModeReport fermionic_modes(const SingleParticleModel& m) {
  ModeReport r;
  r.d_in = circulant_eigenvalues(m.gin);
  r.d_out = circulant_eigenvalues(m.gout);
  require_circulant_psd(r);
  const long n = r.d_in.size();
  r.epsilon.resize(n);
  r.occupation.resize(n);
  r.gap = std::numeric_limits<double>::infinity();
  for (long k = 0; k < n; ++k) {
    r.epsilon(k) = std::log(r.d_out(k) / r.d_in(k));
    r.occupation(k) = r.d_in(k) / (r.d_in(k) + r.d_out(k));
    r.gap = std::min(r.gap, 0.5 * (r.d_in(k) + r.d_out(k)));
  }
  r.gapless = std::min(r.d_in.minCoeff(), r.d_out.minCoeff()) <= 1e-10;
  return r;
}

std::vector<Matrix> jordan_wigner(int n) {
  Lattice lat(n, 2);
  std::vector<Matrix> a;
  for (int i = 0; i < n; ++i) {
    Matrix local = qubit::lowering();
    Sites sites = {i};
    for (int j = i - 1; j >= 0; --j) {
      local = kron(qubit::pauli('Z'), local);
      sites.insert(sites.begin(), j);
    }
    a.push_back(embed(local, sites, lat));
  }
  return a;
}

LindbladSpec build_fermionic_manybody(const FermionParams& p) {
  if (p.n > 7) throw PreconditionError("fermionic many-body model is dense; n <= 7");
  SingleParticleModel sp = single_particle(p);
  ModeReport modes = fermionic_modes(sp);
  const int n = p.n;
  auto a = jordan_wigner(n);
  Matrix u = fourier(n);
  LindbladSpec spec;
  spec.lattice = Lattice(n, 2);
  spec.k = n;
  Sites all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  for (int k = 0; k < n; ++k) {
    Matrix c = Matrix::Zero(a[0].rows(), a[0].cols());
    for (int j = 0; j < n; ++j) c += std::conj(u(j, k)) * a[j];
    const bool in = modes.d_in(k) > 0.0;
    const bool out = modes.d_out(k) > 0.0;
    const int idx = static_cast<int>(spec.jumps.size());
    if (in) spec.jumps.push_back({c.adjoint(), all, modes.d_in(k), out ? idx + 1 : -1});
    if (out) spec.jumps.push_back({c, all, modes.d_out(k), in ? idx : -1});
  }
  return spec;
}

Matrix fermionic_gibbs(const FermionParams& p) {
  SingleParticleModel sp = single_particle(p);
  ModeReport modes = fermionic_modes(sp);
  if (modes.gapless) throw PreconditionError("Gaussian state needs full-rank rate matrices");
  const int n = p.n;
  Matrix u = fourier(n);
  Matrix h = u * modes.epsilon.cast<cplx>().asDiagonal() * u.adjoint();
  auto a = jordan_wigner(n);
  Matrix hss = Matrix::Zero(a[0].rows(), a[0].cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) hss += h(i, j) * a[i].adjoint() * a[j];
  Matrix sigma = hermitian_function(hss, [](double e) { return std::exp(-e); });
  return sigma / sigma.trace();
}

FermionCoeffs fermionic_super_h_coeffs(const SingleParticleModel& m) {
  ModeReport modes = fermionic_modes(m);
  const long n = m.gin.rows();
  if ((m.gin * m.gout - m.gout * m.gin).cwiseAbs().maxCoeff() > 1e-12)
    throw PreconditionError("rate matrices do not commute");
  Matrix u = fourier(n);
  RealVector root(n);
  for (long k = 0; k < n; ++k) root(k) = std::sqrt(std::max(0.0, modes.d_in(k) * modes.d_out(k)));
  FermionCoeffs out;
  out.sqrt_product = (u * root.cast<cplx>().asDiagonal() * u.adjoint()).real();

  const double g_in0 = m.gin(0, 0), g_out0 = m.gout(0, 0);
  const double g_in1 = n > 1 ? m.gin(0, 1) : 0.0, g_out1 = n > 1 ? m.gout(0, 1) : 0.0;
  const double r_in = g_in0 > 0 ? std::abs(2.0 * g_in1 / g_in0) : 1.0;
  const double r_out = g_out0 > 0 ? std::abs(2.0 * g_out1 / g_out0) : 1.0;
  out.bound_applicable = r_in < 1.0 && r_out < 1.0;
  Lattice ring(static_cast<int>(n), 2);
  out.bound = RealMatrix::Zero(n, n);
  out.bound_violation = -std::numeric_limits<double>::infinity();
  if (out.bound_applicable) {
    const double pre = 2.0 * std::sqrt(g_in0) / std::pow(1.0 - r_in, 2) * std::sqrt(g_out0) / std::pow(1.0 - r_out, 2);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        const double d = ring.dist(static_cast<int>(i), static_cast<int>(j));
        out.bound(i, j) = pre * (std::pow(r_in, d / 2.0) + std::pow(r_out, d / 2.0));
        out.bound_violation = std::max(out.bound_violation, std::abs(out.sqrt_product(i, j)) - out.bound(i, j));
      }
  }
  std::vector<Sites> supports(n);
  for (long i = 0; i < n; ++i) supports[i] = {static_cast<int>(i)};
  Matrix mc = out.sqrt_product.cast<cplx>();
  Matrix cc = (m.gin * m.gout).cast<cplx>();
  out.profile = decay_profile(mc, supports, ring);
  (void)cc;
  return out;
}

Matrix hopping_coefficients(const Matrix& super_h, int n) {
  auto a = jordan_wigner(n);
  const double norm2 = std::pow(2.0, n - 1);
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Matrix probe = sandwich(a[i].adjoint(), a[j]);
      out(i, j) = hs_inner(probe, super_h) / (norm2 * norm2);
    }
  return out;
}

}  // namespace superh
