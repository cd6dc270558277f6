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

#include "superh/lindblad_model.hpp"
#include "test_support.hpp"

using namespace superh;
using superh::testing::Rng;

namespace {

LindbladSpec damping_and_pumping(double down, double up) {
  LindbladSpec spec;
  spec.lattice = Lattice(1, 2);
  spec.jumps.push_back({qubit::lowering(), {0}, down, 1});
  spec.jumps.push_back({qubit::raising(), {0}, up, 0});
  return spec;
}

std::vector<double> sorted_real(const std::vector<cplx>& z) {
  std::vector<double> r;
  for (const auto& x : z) r.push_back(x.real());
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace

TEST_CASE("vectorization identity vec(AXB) = kron(A, B^T) vec(X)") {
  Rng rng(1);
  for (int t = 0; t < 5; ++t) {
    Matrix a = superh::testing::gaussian(3, 3, rng), b = superh::testing::gaussian(3, 3, rng),
           x = superh::testing::gaussian(3, 3, rng);
    CHECK((vec(a * x * b) - sandwich(a, b) * vec(x)).norm() < 1e-12);
    CHECK((unvec(vec(x)) - x).norm() == 0.0);
    CHECK(vec(x)(1) == x(0, 1));
    Matrix m = superh::testing::gaussian(9, 9, rng);
    CHECK((kron_apply_left(a, b, m) - kron(a, b) * m).norm() < 1e-11);
    CHECK((kron_apply_right(m, a, b) - m * kron(a, b)).norm() < 1e-11);
  }
}

TEST_CASE("local dissipator acts as the Lindblad form") {
  Rng rng(2);
  Matrix l = superh::testing::gaussian(2, 2, rng), x = superh::testing::gaussian(2, 2, rng);
  Matrix want = l * x * l.adjoint() - 0.5 * (l.adjoint() * l * x + x * l.adjoint() * l);
  CHECK((superop_apply(local_dissipator(l), x) - want).norm() < 1e-12);
  Matrix h = superh::testing::gaussian(2, 2, rng);
  h = (h + h.adjoint()).eval();
  CHECK((superop_apply(local_commutator(h), x) - (-kI * (h * x - x * h))).norm() < 1e-12);
}

TEST_CASE("assembled superoperator matches direct application") {
  Rng rng(3);
  LindbladSpec spec;
  spec.lattice = Lattice(3, 2);
  spec.k = 2;
  spec.jumps.push_back({superh::testing::gaussian(4, 4, rng), {0, 1}, 0.7});
  spec.jumps.push_back({qubit::lowering(), {2}, 1.3});
  Matrix h = superh::testing::gaussian(4, 4, rng);
  spec.hamiltonian.push_back({h + h.adjoint(), {2, 0}});
  SuperOpMatrix s = assemble(spec);
  for (int t = 0; t < 3; ++t) {
    Matrix rho = superh::testing::random_state(8, rng);
    CHECK((superop_apply(s.mat, rho) - apply_lindbladian(spec, rho)).norm() < 1e-11);
  }
  CHECK_THROWS_AS(assemble(spec, 32), PreconditionError);
}

TEST_CASE("amplitude damping spectrum has the closed form") {
  const double g = 0.8;
  LindbladSpec spec;
  spec.jumps.push_back({qubit::lowering(), {0}, g});
  SpectrumReport r = spectrum_and_gap(assemble(spec));
  auto w = sorted_real(r.eigenvalues);
  CHECK(w[0] == doctest::Approx(-g));
  CHECK(w[1] == doctest::Approx(-g / 2));
  CHECK(w[2] == doctest::Approx(-g / 2));
  CHECK(std::abs(w[3]) < 1e-12);
  CHECK(r.gap == doctest::Approx(g / 2));
  CHECK(r.zero_count == 1);
  CHECK(r.left_half_plane);
}

TEST_CASE("dephasing has a two-dimensional kernel") {
  LindbladSpec spec;
  spec.jumps.push_back({qubit::pauli('Z'), {0}, 0.25, 0});
  SuperOpMatrix s = assemble(spec);
  SpectrumReport r = spectrum_and_gap(s);
  CHECK(r.zero_count == 2);
  CHECK(r.gap == doctest::Approx(0.5));
  SteadyStateReport ss = steady_states(s);
  CHECK(ss.kernel_dim == 2);
  CHECK_FALSE(ss.unique);
}

TEST_CASE("damping plus pumping relaxes to the detailed-balance populations") {
  const double down = 1.0, up = 0.25;
  SuperOpMatrix s = assemble(damping_and_pumping(down, up));
  SteadyStateReport ss = steady_states(s);
  REQUIRE(ss.unique);
  CHECK(std::abs(ss.states[0](0, 0) - down / (down + up)) < 1e-12);
  CHECK(std::abs(ss.states[0](0, 1)) < 1e-12);
  CHECK(ss.min_eigenvalue[0] > 0.0);
}

TEST_CASE("evolution of the excited population decays exponentially") {
  const double g = 0.6, t = 1.7;
  LindbladSpec spec;
  spec.jumps.push_back({qubit::lowering(), {0}, g});
  Matrix rho0 = qubit::number();
  Matrix rho = evolve(assemble(spec), rho0, t);
  CHECK(rho(1, 1).real() == doctest::Approx(std::exp(-g * t)).epsilon(1e-12));
  CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
  CHECK_THROWS_AS(evolve(assemble(spec), rho0, -1.0), PreconditionError);
}

TEST_CASE("evolution preserves trace and positivity on random specs") {
  Rng rng(4);
  LindbladSpec spec;
  spec.lattice = Lattice(2, 2);
  spec.k = 2;
  spec.jumps.push_back({superh::testing::gaussian(4, 4, rng), {0, 1}, 1.0});
  spec.jumps.push_back({superh::testing::gaussian(2, 2, rng), {1}, 0.5});
  SuperOpMatrix s = assemble(spec);
  Matrix rho = evolve(s, superh::testing::random_state(4, rng), 0.9);
  CHECK(std::abs(rho.trace() - 1.0) < 1e-10);
  CHECK(hermitian_spectrum(rho).minCoeff() > -1e-10);
}

TEST_CASE("validation flags malformed terms") {
  CHECK(validate(damping_and_pumping(1.0, 0.5)).all_ok());

  LindbladSpec bad_partner = damping_and_pumping(1.0, 0.5);
  bad_partner.jumps[1].op = qubit::pauli('X');
  CHECK_FALSE(validate(bad_partner).all_ok());

  LindbladSpec with_identity;
  with_identity.jumps.push_back({qubit::lowering() + identity(2), {0}, 1.0});
  CHECK_FALSE(validate(with_identity).all_ok());

  LindbladSpec too_wide;
  too_wide.lattice = Lattice(3, 2);
  too_wide.k = 1;
  too_wide.jumps.push_back({kron(qubit::lowering(), qubit::lowering()), {0, 1}, 1.0});
  CHECK_FALSE(validate(too_wide).all_ok());

  LindbladSpec negative = damping_and_pumping(-1.0, 0.5);
  CHECK_FALSE(validate(negative).all_ok());

  LindbladSpec non_hermitian;
  non_hermitian.hamiltonian.push_back({qubit::lowering(), {0}});
  CHECK_FALSE(validate(non_hermitian).all_ok());
}
