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

#include "superh/super_hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace superh {

std::string route_name(Route r) {
  switch (r) {
    case Route::kDense: return "dense";
    case Route::kThm31: return "thm31";
    case Route::kThm32: return "thm32";
  }
  return "unknown";
}

Route parse_route(const std::string& name) {
  if (name == "dense") return Route::kDense;
  if (name == "thm31") return Route::kThm31;
  if (name == "thm32") return Route::kThm32;
  throw PreconditionError("unknown route '" + name + "' (expected dense, thm31 or thm32)");
}

SuperHamiltonian map_dense(const SuperOpMatrix& s, const Matrix& sigma, double s_param) {
  SuperHamiltonian h;
  h.route = Route::kDense;
  h.mat = -gamma_conjugate(s.mat, sigma, s_param, 0.5);
  h.hermiticity = hermiticity_residual(h.mat);
  return h;
}

std::vector<SuperTerm> local_jump_terms(const LindbladSpec& spec) {
  if (!spec.hamiltonian.empty())
    throw PreconditionError("jump-pair route requires a Lindbladian without Hamiltonian terms");
  const Lattice& lat = spec.lattice;
  const auto nj = static_cast<long>(spec.jumps.size());
  std::vector<Matrix> global;
  global.reserve(nj);
  for (const auto& j : spec.jumps) {
    if (!(j.weight > 0.0)) throw PreconditionError("jump-pair route requires positive weights");
    Matrix g = embed(j.op, j.sites, lat);
    const double nrm = g.norm();
    if (nrm == 0.0) throw PreconditionError("zero jump operator");
    global.push_back(g / nrm);
  }
  // Linear independence via the Gram matrix of the normalized jumps.
  Matrix gram(nj, nj);
  for (long a = 0; a < nj; ++a)
    for (long b = a; b < nj; ++b) {
      gram(a, b) = hs_inner(global[a], global[b]);
      gram(b, a) = std::conj(gram(a, b));
    }
  if (nj > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < 1e-10)
      throw PreconditionError("jump operators are linearly dependent (Gram matrix rank deficient)");
  }
  std::vector<SuperTerm> terms;
  for (long a = 0; a < nj; ++a) {
    const auto& j = spec.jumps[a];
    if (j.partner < 0 || j.partner >= nj) throw PreconditionError("jump " + std::to_string(a) + " has no partner");
    const auto& p = spec.jumps[j.partner];
    Matrix want = embed(j.op, j.sites, lat).adjoint();
    Matrix have = embed(p.op, p.sites, lat);
    if ((want - have).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, want.cwiseAbs().maxCoeff()))
      throw PreconditionError("jump " + std::to_string(a) + " partner is not its adjoint");
    const Matrix& l = j.op;
    const long d = l.rows();
    const Matrix ld = l.adjoint() * l;
    const Matrix id = Matrix::Identity(d, d);
    SuperTerm t;
    t.local = -(std::sqrt(j.weight * p.weight) * kron(l, l.conjugate()) -
                0.5 * j.weight * (kron(ld, id) + kron(id, ld.transpose())));
    t.sites = doubled_sites(j.sites, lat);
    t.source = static_cast<int>(a);
    terms.push_back(std::move(t));
  }
  return terms;
}

Matrix assemble_terms(const std::vector<SuperTerm>& terms, const Lattice& lattice, long max_superop_dim) {
  const long n2 = lattice.dim() * lattice.dim();
  if (n2 > max_superop_dim) throw PreconditionError("superoperator dimension exceeds cap");
  const Lattice dl = doubled(lattice);
  Matrix out = Matrix::Zero(n2, n2);
  for (const auto& t : terms) embed_add(out, t.local, t.sites, dl);
  return out;
}

SuperHamiltonian map_local_jumps(const LindbladSpec& spec, long max_superop_dim) {
  SuperHamiltonian h;
  h.route = Route::kThm31;
  h.terms = local_jump_terms(spec);
  h.mat = assemble_terms(h.terms, spec.lattice, max_superop_dim);
  h.hermiticity = hermiticity_residual(h.mat);
  return h;
}

Matrix sqrt_cc(const Matrix& c) {
  if (hermiticity_residual(c) > 1e-9 * std::max(1.0, c.cwiseAbs().maxCoeff()))
    throw PreconditionError("C is not Hermitian");
  // Rank-deficient C is the norm; eigenvalues at rounding level are zeroed
  // before the square root so they do not surface as O(sqrt(eps)) noise.
  auto clipped_root = [](const Matrix& a) {
    const RealVector w = hermitian_spectrum(a);
    const double top = w.cwiseAbs().maxCoeff();
    if (w.size() && w.minCoeff() < -1e-9 * std::max(1.0, top))
      throw PreconditionError("C is not positive semi-definite");
    const double floor = 1e-12 * top;
    return hermitian_function(a, [floor](double w) { return w > floor ? std::sqrt(w) : 0.0; });
  };
  Matrix half = clipped_root(c);
  Matrix prod = half * c.conjugate() * half;
  prod = 0.5 * (prod + prod.adjoint()).eval();
  return clipped_root(prod);
}

SuperHamiltonian map_basis(const CoefficientMatrix& c, double comm_tol) {
  if (!c.hermitian_basis) throw PreconditionError("basis route requires a Hermitian operator basis");
  const long m = c.size();
  const double scale = std::max(1e-300, c.K.cwiseAbs().maxCoeff());
  if (hermiticity_residual(c.K) > 1e-9 * scale) throw PreconditionError("C is not Hermitian");
  RealVector w = hermitian_spectrum(c.K);
  if (m > 0 && w(0) < -1e-9 * scale) throw PreconditionError("C is not positive semi-definite");
  if (c.H.size() && c.H.cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw PreconditionError("Lindbladian has a Hamiltonian part; the basis formula does not apply");
  const double comm = commutator_check(c.K);
  if (comm > comm_tol)
    throw PreconditionError("[C,C*] != 0 (relative " + std::to_string(comm) + "); mapping formula invalid");
  SuperHamiltonian h;
  h.route = Route::kThm32;
  h.coeff_sqrt = sqrt_cc(c.K);
  h.supports = c.supports;
  const long n = c.H.rows();
  Matrix a = Matrix::Zero(n, n);
  {
    Matrix y = c.frame * c.K;
    for (long b = 0; b < m; ++b) a += unvec(c.frame.col(b)).adjoint() * unvec(y.col(b));
  }
  Matrix id = Matrix::Identity(n, n);
  h.mat = -(realign(c.frame * h.coeff_sqrt * c.frame.adjoint()) - 0.5 * (kron(a, id) + kron(id, a.transpose())));
  h.hermiticity = hermiticity_residual(h.mat);
  return h;
}

double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  auto lex = [](cplx x, cplx y) { return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag()); };
  std::sort(a.begin(), a.end(), lex);
  std::sort(b.begin(), b.end(), lex);
  std::vector<char> used(b.size(), 0);
  double worst = 0.0;
  for (const auto& x : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      double dist = std::abs(x - b[j]);
      if (dist < best) {
        best = dist;
        arg = j;
      }
    }
    used[arg] = 1;
    worst = std::max(worst, best);
  }
  return worst;
}

VerificationReport verify_mapping(const SuperOpMatrix& s, const SuperHamiltonian& h, const Matrix& sigma,
                                  double zero_threshold) {
  VerificationReport rep;
  SpectrumReport ss = spectrum_and_gap(s, zero_threshold);
  std::vector<cplx> neg;
  neg.reserve(ss.eigenvalues.size());
  for (const auto& z : ss.eigenvalues) neg.push_back(-z);
  rep.spectrum_distance = multiset_distance(general_spectrum(h.mat), neg);
  Matrix root = hermitian_power(sigma, 0.5);
  rep.kernel_residual = (h.mat * vec(root)).norm();
  rep.hermiticity = hermiticity_residual(h.mat);
  RealVector hw = hermitian_spectrum(h.mat);
  rep.min_eigenvalue = hw.size() ? hw(0) : 0.0;
  rep.gap_s = ss.gap;
  rep.gap_h = 0.0;
  for (Eigen::Index i = 0; i < hw.size(); ++i) {
    if (std::abs(hw(i)) <= ss.zero_threshold) {
      ++rep.kernel_dim_h;
    } else if (rep.gap_h == 0.0 && hw(i) > 0.0) {
      rep.gap_h = hw(i);
    }
  }
  return rep;
}

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  LineFit f;
  const double n = static_cast<double>(x.size());
  if (x.size() < 2) return f;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ssr = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double e = y[i] - (f.intercept + f.slope * x[i]);
    ssr += e * e;
  }
  f.r2 = syy == 0.0 ? 1.0 : 1.0 - ssr / syy;
  return f;
}

}  // namespace

DecayProfile decay_profile(const Matrix& m, const std::vector<Sites>& supports, const Lattice& lattice,
                           const Matrix* c) {
  const long sz = m.rows();
  if (m.cols() != sz || static_cast<long>(supports.size()) != sz)
    throw PreconditionError("decay_profile needs a square matrix with one support per index");
  const int rmax = lattice.n() / 2;
  DecayProfile p;
  for (int r = 0; r <= rmax; ++r) p.distance.push_back(r);
  p.max_abs.assign(rmax + 1, 0.0);
  std::vector<std::vector<int>> dist(sz, std::vector<int>(sz));
  int diameter = 1;
  for (long a = 0; a < sz; ++a) {
    diameter = std::max(diameter, std::max(1, lattice.window_span(supports[a])));
    for (long b = 0; b < sz; ++b) dist[a][b] = lattice.dist(supports[a], supports[b]);
  }
  for (long a = 0; a < sz; ++a)
    for (long b = 0; b < sz; ++b) {
      int r = dist[a][b];
      p.max_abs[r] = std::max(p.max_abs[r], std::abs(m(a, b)));
    }

  Matrix aa = m * m.adjoint();
  const double ascale = aa.cwiseAbs().maxCoeff();
  for (long a = 0; a < sz; ++a)
    for (long b = 0; b < sz; ++b)
      if (std::abs(aa(a, b)) > 1e-12 * ascale) p.bandwidth = std::max(p.bandwidth, dist[a][b]);
  RealVector w = hermitian_spectrum(aa);
  p.lambda_max = w.size() ? w(w.size() - 1) : 0.0;
  p.lambda_min = p.lambda_max;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w(i) > 1e-10 * p.lambda_max) {
      p.lambda_min = w(i);
      break;
    }
  p.j = (c != nullptr) ? c->cwiseAbs().maxCoeff() : m.cwiseAbs().maxCoeff();

  // An entry at distance r is untouched by polynomials of degree < r / step
  // in A, so the sqrt error bound of degree m(r) applies to it.
  const int step = std::max(1, p.bandwidth + diameter - 1);
  for (int r = 0; r <= rmax; ++r) {
    int deg = std::max(0, (r + step - 1) / step - 1);
    double b = std::sqrt(p.lambda_max);
    if (deg > 0 && p.lambda_max > 0.0) b *= std::exp(-deg * p.lambda_min / p.lambda_max);
    p.bound.push_back(b);
  }

  const int fit_hi = std::max(1, lattice.n() / 4);
  std::vector<double> xr, xl, y;
  bool any = false;
  for (int r = 1; r <= rmax; ++r)
    if (p.max_abs[r] > 1e-14) any = true;
  p.degenerate = !any;
  for (int r = 1; r <= std::min(fit_hi, rmax); ++r) {
    if (p.max_abs[r] <= 1e-14) continue;
    xr.push_back(r);
    xl.push_back(std::log(static_cast<double>(r)));
    y.push_back(std::log(p.max_abs[r]));
  }
  p.fit_points = static_cast<int>(y.size());
  if (p.fit_points >= 2) {
    LineFit e = fit_line(xr, y);
    p.exp_rate = -e.slope;
    p.exp_prefactor = std::exp(e.intercept);
    p.exp_r2 = e.r2;
    LineFit q = fit_line(xl, y);
    p.poly_exponent = -q.slope;
    p.poly_prefactor = std::exp(q.intercept);
    p.poly_r2 = q.r2;
  }
  return p;
}

SqrtPolyResult sqrt_poly(const Matrix& a, int m) {
  if (m < 1) throw PreconditionError("sqrt_poly: degree must be at least 1");
  SqrtPolyResult r;
  RealVector w = hermitian_spectrum(a);
  r.lambda_max = w.size() ? w(w.size() - 1) : 0.0;
  if (r.lambda_max <= 0.0) throw PreconditionError("sqrt_poly: matrix has no positive spectrum");
  r.lambda_min = r.lambda_max;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w(i) > 1e-10 * r.lambda_max) {
      r.lambda_min = w(i);
      break;
    }
  const long n = a.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix b = a / r.lambda_max - id;
  std::vector<double> coef(m);
  coef[0] = 1.0;
  for (int j = 0; j + 1 < m; ++j) coef[j + 1] = -coef[j] * (2.0 * j + 1.0) / (2.0 * j + 2.0);
  Matrix q = coef[m - 1] * id;
  for (int j = m - 2; j >= 0; --j) q = (q * b + coef[j] * id).eval();
  r.value = a * q / std::sqrt(r.lambda_max);
  r.error = spectral_norm(hermitian_power(a, 0.5) - r.value);
  r.bound = std::sqrt(r.lambda_max) * std::exp(-m * r.lambda_min / r.lambda_max);
  r.within_bound = r.error <= r.bound * (1.0 + 1e-6);
  return r;
}

}  // namespace superh
