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

#include <cmath>

#include "superh/entanglement.hpp"
#include "superh/example_models.hpp"
#include "superh/lindblad_model.hpp"
#include "test_support.hpp"

using namespace superh;
using superh::testing::Rng;

TEST_CASE("entropy of simple states") {
  CHECK(von_neumann_entropy(identity(4) / 4.0) == doctest::Approx(std::log(4.0)));
  CHECK(von_neumann_entropy(qubit::number()) == doctest::Approx(0.0));
}

TEST_CASE("purification reproduces the state") {
  Rng rng(1);
  Lattice lat(3, 2);
  Matrix sigma = superh::testing::random_state(8, rng);
  DoubledState st = vectorize_state(sigma, lat);
  CHECK(st.pairs.d() == 4);
  CHECK(st.psi.norm() == doctest::Approx(1.0));
  CHECK(purification_residual(st, sigma) < 1e-12);
  CHECK((deinterleave(st) - vec(hermitian_power(sigma, 0.5))).norm() < 1e-14);
}

TEST_CASE("product states have no operator-space entanglement") {
  Rng rng(2);
  Lattice lat(3, 2);
  Matrix a = superh::testing::random_state(2, rng), b = superh::testing::random_state(2, rng),
         c = superh::testing::random_state(2, rng);
  Matrix sigma = kron(kron(a, b), c);
  for (const Sites& cut : {Sites{0}, Sites{0, 1}, Sites{2, 0}}) {
    EntanglementReport r = op_space_entropy(sigma, cut, lat);
    CHECK(r.op_entropy < 1e-10);
    CHECK(std::abs(r.mutual_information) < 1e-10);
  }
}

TEST_CASE("Bell state has closed-form entropies") {
  Vector psi = Vector::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  Matrix sigma = psi * psi.adjoint();
  EntanglementReport r = op_space_entropy(sigma, {0}, Lattice(2, 2));
  // The purification is psi (x) conj(psi): two Bell pairs across the cut.
  CHECK(r.op_entropy == doctest::Approx(2.0 * std::log(2.0)));
  CHECK(r.mutual_information == doctest::Approx(2.0 * std::log(2.0)));
  CHECK(r.mi_bound_ok);
}

TEST_CASE("mutual information bound on random states") {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    Lattice lat(3, 2);
    Matrix sigma = superh::testing::random_state(8, rng, 50.0);
    for (const Sites& cut : {Sites{0}, Sites{0, 1}, Sites{1}}) {
      EntanglementReport r = op_space_entropy(sigma, cut, lat);
      CHECK(r.mutual_information <= 2.0 * r.op_entropy + 1e-8);
    }
  }
}

TEST_CASE("cuts must be contiguous proper intervals") {
  Lattice lat(4, 2);
  Matrix sigma = identity(16) / 16.0;
  CHECK_THROWS_AS(op_space_entropy(sigma, {0, 2}, lat), PreconditionError);
  CHECK_THROWS_AS(op_space_entropy(sigma, {}, lat), PreconditionError);
  CHECK_THROWS_AS(op_space_entropy(sigma, {0, 1, 2, 3}, lat), PreconditionError);
  CHECK_NOTHROW(op_space_entropy(sigma, {3, 0}, lat));
}

TEST_CASE("truncation curve is exact at full bond dimension") {
  ClassicalModelParams p = ClassicalModelParams::uniform(4, 1.0, 0.0, 0.5, 1.0);
  Matrix sigma = classical_gibbs(p);
  auto curve = truncation_curve(sigma, Lattice(4, 2), {1, 2, 4, 16});
  REQUIRE(curve.size() == 4);
  CHECK(curve.back().trace_distance < 1e-10);
  CHECK(curve.back().overlap == doctest::Approx(1.0));
  for (const auto& pt : curve) {
    CHECK(pt.trace_distance <= pt.sound_bound + 1e-9);
    CHECK(pt.overlap <= 1.0);
  }
  CHECK(curve.front().trace_distance > 1e-6);
  CHECK_THROWS_AS(truncation_curve(sigma, Lattice(4, 2), {4, 2}), PreconditionError);
}

TEST_CASE("pure-state trace distance can exceed sqrt2 times the vector distance") {
  // |psi> = |0>, |phi> = cos t |0> + sin t |1>: trace distance 2 sin t,
  // vector distance 2 sin(t/2), so sqrt2 * vector distance is about sqrt2 t.
  const double t = 0.1;
  Vector psi(2), phi(2);
  psi << 1.0, 0.0;
  phi << std::cos(t), std::sin(t);
  const double trace = trace_norm_hermitian(psi * psi.adjoint() - phi * phi.adjoint());
  const double vdist = (psi - phi).norm();
  CHECK(trace == doctest::Approx(2.0 * std::sin(t)));
  CHECK(trace > std::sqrt(2.0) * vdist);
  const double overlap = std::abs(psi.dot(phi));
  CHECK(trace <= 2.0 * std::sqrt(1.0 - overlap * overlap) + 1e-14);
}
