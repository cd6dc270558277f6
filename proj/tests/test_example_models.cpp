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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "superh/entanglement.hpp"
#include "superh/example_models.hpp"
#include "test_support.hpp"

using namespace superh;
using superh::testing::Rng;

namespace {

constexpr double kPi = 3.14159265358979323846;

ClassicalModelParams random_classical(int n, Rng& rng, double u) {
  std::uniform_real_distribution<double> e(0.0, 1.0), g(0.2, 1.5);
  ClassicalModelParams p = ClassicalModelParams::uniform(n, 0.0, 0.1, u, 0.8);
  for (auto& x : p.eps) x = e(rng);
  p.gamma.resize(n);
  for (auto& row : p.gamma)
    for (double& x : row) x = g(rng);
  return p;
}

double energy(const ClassicalModelParams& p, long x) {
  auto bit = [&](int s) { return static_cast<double>((x >> (p.n - 1 - s)) & 1L); };
  double e = 0.0;
  for (int i = 0; i < p.n; ++i) e += (p.eps[i] - p.mu) * bit(i) + p.u * bit(i) * bit((i + 1) % p.n);
  return e;
}

}  // namespace

TEST_CASE("classical Bohr frequency formula") {
  ClassicalModelParams p = ClassicalModelParams::uniform(3, 1.0, 0.0, 0.5, 1.0);
  CHECK(classical_omega(p, 0, 2) == doctest::Approx(-2.0));
  CHECK(classical_omega(p, 1, 0) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(build_classical(ClassicalModelParams::uniform(2, 1.0, 0.0, 0.5, 1.0)), PreconditionError);
}

TEST_CASE("classical Gibbs state matches the energy function") {
  Rng rng(1);
  ClassicalModelParams p = random_classical(4, rng, 0.7);
  Matrix sigma = classical_gibbs(p);
  for (long x = 1; x < 16; ++x)
    CHECK(sigma(x, x).real() / sigma(0, 0).real() ==
          doctest::Approx(std::exp(-p.beta * (energy(p, x) - energy(p, 0)))).epsilon(1e-12));
  CHECK(std::abs(sigma.trace() - 1.0) < 1e-14);
}

TEST_CASE("non-interacting classical state is a product") {
  ClassicalModelParams p = ClassicalModelParams::uniform(4, 0.7, 0.1, 0.0, 1.3);
  Matrix sigma = classical_gibbs(p);
  Lattice lat(4, 2);
  for (const Sites& cut : {Sites{0}, Sites{0, 1}, Sites{0, 1, 2}})
    CHECK(std::abs(mutual_information(sigma, cut, lat)) < 1e-12);
}

TEST_CASE("classical steady state is unique and annihilated term by term") {
  ClassicalModelParams p = ClassicalModelParams::uniform(4, 1.0, 0.0, 0.5, 1.0);
  ClassicalModel m = build_classical(p);
  SuperOpMatrix s = assemble(m.spec);
  CHECK(superop_apply(s.mat, m.sigma).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(steady_states(s).kernel_dim == 1);
  for (std::size_t pair = 0; pair < m.labels.size(); ++pair) {
    LindbladSpec one;
    one.lattice = m.spec.lattice;
    one.k = 3;
    one.jumps = {m.spec.jumps[2 * pair], m.spec.jumps[2 * pair + 1]};
    one.jumps[0].partner = 1;
    one.jumps[1].partner = 0;
    CHECK(apply_lindbladian(one, m.sigma).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(qdb_residual(assemble(one), m.sigma, 1.0).qdb < 1e-9);
  }
}

TEST_CASE("classical jumps have well-defined Bohr frequencies") {
  Rng rng(2);
  ClassicalModelParams p = random_classical(4, rng, -0.6);
  ClassicalModel m = build_classical(p);
  Matrix inv = hermitian_power(m.sigma, -1.0);
  for (std::size_t pair = 0; pair < m.labels.size(); ++pair) {
    const auto& j = m.spec.jumps[2 * pair];
    const double w = p.beta * classical_omega(p, m.labels[pair][0], m.labels[pair][1]);
    Matrix l = embed(j.op, j.sites, m.spec.lattice);
    CHECK((m.sigma * l * inv - std::exp(-w) * l).cwiseAbs().maxCoeff() < 1e-9 * std::max(1.0, std::exp(-w)));
  }
}

TEST_CASE("canonical form recovers the classical Bohr frequencies") {
  ClassicalModelParams p = ClassicalModelParams::uniform(3, 1.0, 0.2, 0.5, 1.0);
  p.eps = {1.0, 0.4, 0.7};
  ClassicalModel m = build_classical(p);
  CanonicalForm cf = canonical_form(assemble(m.spec), m.sigma);
  std::vector<double> got, want;
  for (double w : cf.omega)
    if (w < 0.0) got.push_back(w);
  for (int k = 0; k < 3; ++k)
    for (int b = 0; b < 3; ++b) want.push_back(p.beta * classical_omega(p, k, b));
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  // Distinct (k, b) share a frequency only by accident; the multiset must match.
  REQUIRE(got.size() >= want.size());
  for (double w : want) {
    double best = 1e300;
    for (double g : got) best = std::min(best, std::abs(g - w));
    CHECK(best < 1e-8);
  }
}

TEST_CASE("classical rate matrix") {
  Rng rng(3);
  ClassicalModelParams p = random_classical(4, rng, 0.9);
  RateMatrix r = classical_rate_matrix(p);
  const long n = 16;
  for (long x = 0; x < n; ++x) {
    CHECK(std::abs(r.rates.col(x).sum()) < 1e-12);
    CHECK(r.exit(x) == doctest::Approx(-r.rates(x, x)));
    for (long y = 0; y < n; ++y)
      if (y != x) CHECK(r.rates(y, x) >= 0.0);
  }
  Matrix sigma = classical_gibbs(p);
  for (long x = 0; x < n; ++x)
    for (long y = 0; y < n; ++y)
      CHECK(std::abs(r.rates(y, x) * sigma(x, x).real() - r.rates(x, y) * sigma(y, y).real()) < 1e-10);
  SuperOpMatrix s = assemble(build_classical(p).spec);
  for (long x = 0; x < n; ++x)
    for (long y = 0; y < n; ++y) CHECK(std::abs(s.mat(x * n + x, y * n + y) - r.rates(x, y)) < 1e-10);
}

TEST_CASE("single-flip rates follow the Boltzmann ratio") {
  ClassicalModelParams p = ClassicalModelParams::uniform(3, 1.0, 0.0, 0.5, 2.0);
  RateMatrix r = classical_rate_matrix(p);
  // Flip site 1 between x = 000 and 010 (b = 0).
  const double up = r.rates(2, 0), down = r.rates(0, 2);
  CHECK(down / up == doctest::Approx(std::exp(-p.beta * classical_omega(p, 1, 0))));
}

TEST_CASE("uniqueness report for positive weights") {
  Rng rng(4);
  ClassicalModelParams p = random_classical(3, rng, 0.5);
  UniquenessReport r = uniqueness_report(p);
  CHECK(r.propagator_positive);
  CHECK(r.kernel_dim == 1);
  CHECK(r.dominance_ok);
  CHECK(r.coherence_decays);
  CHECK(r.all_ok());
  CHECK(r.all_weights_positive);

  ClassicalModelParams q = p;
  q.gamma[1] = {0.0, 0.0, 0.0};
  UniquenessReport rq = uniqueness_report(q);
  CHECK_FALSE(rq.all_weights_positive);
  CHECK_FALSE(rq.all_ok());

  // Short times shrink the smallest propagator entry towards zero.
  CHECK(uniqueness_report(p, 1e-3).min_propagator_entry < r.min_propagator_entry);
}

TEST_CASE("Jordan-Wigner operators satisfy the canonical anticommutation relations") {
  auto a = jordan_wigner(3);
  const Matrix id = identity(8);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK((a[i] * a[j].adjoint() + a[j].adjoint() * a[i] - (i == j ? id : Matrix::Zero(8, 8))).norm() < 1e-14);
      CHECK((a[i] * a[j] + a[j] * a[i]).norm() < 1e-14);
    }
}

TEST_CASE("mode eigenvalues of the circulants") {
  FermionParams p;
  ModeReport r = fermionic_modes(single_particle(p));
  for (int k = 0; k < 4; ++k) {
    CHECK(r.d_in(k) == doctest::Approx(3.0 + 2.0 * std::cos(2 * kPi * k / 4)));
    CHECK(r.d_out(k) == doctest::Approx(2.0 + std::cos(2 * kPi * k / 4)));
  }
  CHECK(r.gap == doctest::Approx(1.0));
  CHECK_FALSE(r.gapless);

  FermionParams flat{5, 1.2, 0.0, 0.7, 0.0};
  ModeReport rf = fermionic_modes(single_particle(flat));
  CHECK(rf.gap == doctest::Approx((1.2 + 0.7) / 2.0));
  CHECK((rf.d_in.array() - 1.2).abs().maxCoeff() < 1e-14);

  FermionParams edge{4, 2.0, 1.0, 2.0, 0.5};
  CHECK(fermionic_modes(single_particle(edge)).gapless);
  FermionParams bad{4, 1.0, 1.0, 2.0, 0.5};
  CHECK_THROWS_AS(fermionic_modes(single_particle(bad)), PreconditionError);

  SingleParticleModel sp = single_particle(p);
  CHECK((sp.gin * sp.gout - sp.gout * sp.gin).norm() == 0.0);
}

TEST_CASE("single mode reduces to damping plus pumping") {
  FermionParams p{1, 1.0, 0.0, 2.0, 0.0};
  SpectrumReport r = spectrum_and_gap(assemble(build_fermionic_manybody(p)));
  std::vector<double> w;
  for (const auto& z : r.eigenvalues) w.push_back(z.real());
  std::sort(w.begin(), w.end());
  CHECK(w[0] == doctest::Approx(-3.0));
  CHECK(w[1] == doctest::Approx(-1.5));
  CHECK(w[2] == doctest::Approx(-1.5));
  CHECK(std::abs(w[3]) < 1e-12);
}

TEST_CASE("many-body fermionic model against the mode picture") {
  FermionParams p;
  LindbladSpec spec = build_fermionic_manybody(p);
  SuperOpMatrix s = assemble(spec);
  ModeReport modes = fermionic_modes(single_particle(p));
  CHECK(spectrum_and_gap(s).gap == doctest::Approx(modes.gap).epsilon(1e-8));

  Matrix sigma = fermionic_gibbs(p);
  CHECK(qdb_residual(s, sigma, 1.0).qdb < 1e-8);
  SteadyStateReport ss = steady_states(s);
  REQUIRE(ss.unique);
  CHECK((ss.states[0] - sigma).cwiseAbs().maxCoeff() < 1e-8);

  auto a = jordan_wigner(p.n);
  for (int k = 0; k < p.n; ++k) {
    Matrix c = Matrix::Zero(16, 16);
    for (int j = 0; j < p.n; ++j) c += std::polar(1.0 / 2.0, -2 * kPi * k * j / p.n) * a[j];
    CHECK(std::abs((sigma * c.adjoint() * c).trace() - modes.occupation(k)) < 1e-8);
  }
}

TEST_CASE("super-Hamiltonian hopping coefficients equal minus sqrt(gin gout)") {
  FermionParams p{3, 2.0, 0.6, 1.5, -0.4};
  LindbladSpec spec = build_fermionic_manybody(p);
  SuperOpMatrix s = assemble(spec);
  SuperHamiltonian h = map_dense(s, fermionic_gibbs(p));
  Matrix hop = hopping_coefficients(h.mat, p.n);
  FermionCoeffs fc = fermionic_super_h_coeffs(single_particle(p));
  CHECK((hop + fc.sqrt_product.cast<cplx>()).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("square root of the rate product and its decay bound") {
  FermionParams diag{6, 3.0, 0.0, 2.0, 0.0};
  FermionCoeffs d = fermionic_super_h_coeffs(single_particle(diag));
  CHECK((d.sqrt_product - std::sqrt(6.0) * RealMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);

  FermionParams gapped{100, 3.0, 1.0, 2.0, 0.5};
  SingleParticleModel sp = single_particle(gapped);
  FermionCoeffs g = fermionic_super_h_coeffs(sp);
  CHECK((g.sqrt_product * g.sqrt_product - sp.gin * sp.gout).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(g.bound_applicable);
  CHECK(g.bound_violation <= 0.0);
  CHECK(g.profile.prefers_exponential());
  CHECK(g.profile.exp_rate > 0.0);

  FermionParams gapless{100, 3.0, 1.0, 2.0, 1.0};
  FermionCoeffs q = fermionic_super_h_coeffs(single_particle(gapless));
  CHECK_FALSE(q.bound_applicable);
  CHECK_FALSE(q.profile.prefers_exponential());
}

TEST_CASE("circulants with coinciding neighbours") {
  RealMatrix c2 = circulant(2, 1.0, 0.25);
  CHECK(c2(0, 1) == doctest::Approx(0.5));
  CHECK(c2(0, 0) == doctest::Approx(1.0));
  RealMatrix c1 = circulant(1, 1.0, 0.25);
  CHECK(c1(0, 0) == doctest::Approx(1.5));
}
