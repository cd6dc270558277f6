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

#include "superh/knabe_gap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

#include "superh/super_hamiltonian.hpp"

namespace superh {

namespace {

double smallest_above(const RealVector& w, double thr) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (w(i) > thr) best = std::min(best, w(i));
  return best;
}

}  // namespace

Matrix classical_site_term(double eps_k, double mu, double u, double beta) {
  // A 3-site ring holding only the jumps of the middle site.
  ClassicalModelParams p = ClassicalModelParams::uniform(3, 0.0, mu, u, beta);
  p.eps[1] = eps_k;
  p.gamma = {{0, 0, 0}, {1, 1, 1}, {0, 0, 0}};
  ClassicalModel m = build_classical(p);
  auto terms = local_jump_terms(m.spec);
  Matrix h = Matrix::Zero(64, 64);
  for (const auto& t : terms) h += t.local;
  return h;
}

LocalTermSet classical_local_terms(const ClassicalModelParams& p, bool with_kernel) {
  p.check();
  LocalTermSet set;
  set.lattice = Lattice(p.n, 2);
  for (int k = 0; k < p.n; ++k) {
    set.terms.push_back(classical_site_term(p.eps[k], p.mu, p.u, p.beta));
    set.sites.push_back({(k + p.n - 1) % p.n, k, (k + 1) % p.n});
  }
  if (with_kernel) set.kernel = vec(hermitian_power(classical_gibbs(p), 0.5));
  return set;
}

PositiveProjector positive_projector(const Matrix& h) {
  if (hermiticity_residual(h) > 1e-9 * std::max(1.0, h.cwiseAbs().maxCoeff()))
    throw PreconditionError("term is not Hermitian");
  const double scale = spectral_norm(h);
  const double thr = 1e-9 * scale;
  PositiveProjector out;
  out.projector = Matrix::Zero(h.rows(), h.cols());
  out.g = std::numeric_limits<double>::infinity();
  for (const auto& block : coupled_blocks(h)) {
    const long m = static_cast<long>(block.size());
    Matrix sub(m, m);
    for (long j = 0; j < m; ++j)
      for (long i = 0; i < m; ++i) sub(i, j) = h(block[i], block[j]);
    Eigen::SelfAdjointEigenSolver<Matrix> es(sub);
    for (long c = 0; c < m; ++c) {
      const double w = es.eigenvalues()(c);
      if (w < -thr) throw PreconditionError("term is not positive semi-definite");
      if (w <= thr) continue;
      out.g = std::min(out.g, w);
      const auto v = es.eigenvectors().col(c);
      for (long j = 0; j < m; ++j)
        for (long i = 0; i < m; ++i) out.projector(block[i], block[j]) += v(i) * std::conj(v(j));
    }
  }
  if (!std::isfinite(out.g)) throw PreconditionError("term has no positive spectrum");
  return out;
}

double pair_gap(const Matrix& pa, const Sites& sa, const Matrix& pb, const Sites& sb, int d) {
  Sites uni = sa;
  for (int s : sb)
    if (std::find(uni.begin(), uni.end(), s) == uni.end()) uni.push_back(s);
  auto relabel = [&](const Sites& s) {
    Sites out;
    for (int x : s) out.push_back(static_cast<int>(std::find(uni.begin(), uni.end(), x) - uni.begin()));
    return out;
  };
  const Lattice win(static_cast<int>(uni.size()), d);
  const Lattice dw = doubled(win);
  const long dim = dw.dim();
  Matrix sum = Matrix::Zero(dim, dim);
  embed_add(sum, pa, doubled_sites(relabel(sa), win), dw);
  embed_add(sum, pb, doubled_sites(relabel(sb), win), dw);
  const double g = smallest_above(hermitian_spectrum(sum), 1e-9);
  if (!std::isfinite(g)) throw PreconditionError("pair of projectors has no positive spectrum");
  return g;
}

GapCertificate local_gap(const LocalTermSet& terms) {
  const long nt = static_cast<long>(terms.terms.size());
  if (nt < 2) throw PreconditionError("local gap needs at least two terms");
  GapCertificate cert;
  std::vector<Matrix> proj;
  for (const auto& h : terms.terms) {
    auto p = positive_projector(h);
    proj.push_back(std::move(p.projector));
    cert.g.push_back(p.g);
  }
  cert.g_min = *std::min_element(cert.g.begin(), cert.g.end());
  cert.gamma_loc = std::numeric_limits<double>::infinity();
  const long npairs = nt == 2 ? 1 : nt;
  for (long k = 0; k < npairs; ++k) {
    const long k2 = (k + 1) % nt;
    const double g = pair_gap(proj[k], terms.sites[k], proj[k2], terms.sites[k2], terms.lattice.d());
    cert.pair_gaps.push_back(g);
    cert.gamma_loc = std::min(cert.gamma_loc, g);
  }
  cert.bound = knabe_bound(cert.gamma_loc, cert.delta);
  return cert;
}

double knabe_bound(double gamma_loc, int delta) {
  if (delta < 2) throw PreconditionError("Knabe bound needs delta >= 2");
  return 2.0 * (delta - 1) * (gamma_loc - (1.0 - 1.0 / (2.0 * (delta - 1))));
}

namespace {

double sum_gap(const LocalTermSet& terms, bool projectors) {
  const Lattice dl = doubled(terms.lattice);
  const long dim = dl.dim();
  Matrix sum = Matrix::Zero(dim, dim);
  for (std::size_t k = 0; k < terms.terms.size(); ++k) {
    const Matrix local = projectors ? positive_projector(terms.terms[k]).projector : terms.terms[k];
    embed_add(sum, local, doubled_sites(terms.sites[k], terms.lattice), dl);
  }
  const double g = smallest_above(hermitian_spectrum(sum), 1e-9);
  if (!std::isfinite(g)) throw PreconditionError("summed operator has no positive spectrum");
  return g;
}

}  // namespace

double sum_projector_gap(const LocalTermSet& terms) { return sum_gap(terms, true); }

double sum_terms_gap(const LocalTermSet& terms) { return sum_gap(terms, false); }

KnabeTable knabe_table(double beta, int random_instances, std::uint64_t seed) {
  if (random_instances < 1) throw PreconditionError("need at least one random instance");
  KnabeTable t;
  t.beta = beta;
  t.random_instances = random_instances;
  t.seed = seed;
  t.rows = {"random eps", "const eps=1", "const eps=0.5", "eps=1/10 alternating"};
  t.values.assign(4, std::vector<double>(t.u.size(), 0.0));

  for (std::size_t c = 0; c < t.u.size(); ++c) {
    const double u = t.u[c];
    // A pair gap depends only on the two site energies.
    auto proj = [&](double e) { return positive_projector(classical_site_term(e, t.mu, u, beta)).projector; };
    const Sites sa = {0, 1, 2}, sb = {1, 2, 3};
    auto pg = [&](double e1, double e2) { return pair_gap(proj(e1), sa, proj(e2), sb); };

    t.values[1][c] = pg(1.0, 1.0);
    t.values[2][c] = pg(0.5, 0.5);
    {
      Matrix p1 = proj(1.0), p10 = proj(10.0);
      t.values[3][c] = std::min(pair_gap(p1, sa, p10, sb), pair_gap(p10, sa, p1, sb));
    }
    double acc = 0.0;
    for (int i = 0; i < random_instances; ++i) {
      std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i));
      std::uniform_real_distribution<double> dist(0.0, 1.0);
      std::vector<double> eps(t.random_ring);
      for (auto& e : eps) e = dist(rng);
      std::vector<Matrix> ps;
      for (double e : eps) ps.push_back(proj(e));
      double best = std::numeric_limits<double>::infinity();
      for (int k = 0; k < t.random_ring; ++k)
        best = std::min(best, pair_gap(ps[k], sa, ps[(k + 1) % t.random_ring], sb));
      acc += best;
    }
    t.values[0][c] = acc / random_instances;
  }
  return t;
}

}  // namespace superh
