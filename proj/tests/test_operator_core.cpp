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

#include <Eigen/SVD>

#include "superh/operator_core.hpp"
#include "test_support.hpp"

using namespace superh;
using superh::testing::Rng;

namespace {

Matrix kron3(const Matrix& a, const Matrix& b, const Matrix& c) { return kron(kron(a, b), c); }

// Explicit matrix element oracle for a two-site operator on sites (i, j) of
// a qubit register, with the first local index belonging to site i.
Matrix embed_oracle(const Matrix& op, int i, int j, int n) {
  const long dim = 1L << n;
  Matrix out = Matrix::Zero(dim, dim);
  auto bit = [n](long x, int s) { return (x >> (n - 1 - s)) & 1L; };
  for (long r = 0; r < dim; ++r)
    for (long c = 0; c < dim; ++c) {
      bool rest_equal = true;
      for (int s = 0; s < n; ++s)
        if (s != i && s != j && bit(r, s) != bit(c, s)) rest_equal = false;
      if (!rest_equal) continue;
      out(r, c) = op(bit(r, i) * 2 + bit(r, j), bit(c, i) * 2 + bit(c, j));
    }
  return out;
}

}  // namespace

TEST_CASE("lattice geometry on a ring") {
  Lattice lat(6, 2);
  CHECK(lat.dim() == 64);
  CHECK(lat.dist(0, 5) == 1);
  CHECK(lat.dist(1, 4) == 3);
  CHECK(lat.dist(Sites{0, 1}, Sites{3, 4}) == 2);
  CHECK(lat.window_span(Sites{5, 0}) == 2);
  CHECK(lat.window_span(Sites{0, 2}) == 3);
  CHECK(lat.window_span(Sites{0, 2, 4}) == 5);
}

TEST_CASE("large lattices keep geometry but refuse dense dimension") {
  Lattice lat(100, 2);
  CHECK(lat.dist(0, 99) == 1);
  CHECK_THROWS_AS(lat.dim(), PreconditionError);
}

TEST_CASE("embed matches explicit Kronecker products") {
  Lattice lat(3, 2);
  const Matrix x = qubit::pauli('X'), z = qubit::pauli('Z'), id = identity(2);
  CHECK((embed(x, {1}, lat) - kron3(id, x, id)).norm() < 1e-14);
  CHECK((embed(kron(x, z), {0, 2}, lat) - kron3(x, id, z)).norm() < 1e-14);
  CHECK((embed(kron(x, z), {2, 0}, lat) - kron3(z, id, x)).norm() < 1e-14);
}

TEST_CASE("embed of a random two-site operator with reversed order") {
  Rng rng(1);
  Matrix op = superh::testing::gaussian(4, 4, rng);
  Lattice lat(4, 2);
  CHECK((embed(op, {3, 1}, lat) - embed_oracle(op, 3, 1, 4)).norm() < 1e-12);
  Matrix acc = Matrix::Zero(16, 16);
  embed_add(acc, op, {0, 2}, lat, cplx(0.5, -1.0));
  CHECK((acc - cplx(0.5, -1.0) * embed_oracle(op, 0, 2, 4)).norm() < 1e-12);
}

TEST_CASE("partial trace of product operators") {
  Rng rng(2);
  Matrix a = superh::testing::gaussian(2, 2, rng), b = superh::testing::gaussian(2, 2, rng),
         c = superh::testing::gaussian(2, 2, rng);
  Lattice lat(3, 2);
  Matrix abc = kron3(a, b, c);
  CHECK((partial_trace(abc, {0}, lat) - a * b.trace() * c.trace()).norm() < 1e-12);
  CHECK((partial_trace(abc, {2, 0}, lat) - kron(c, a) * b.trace()).norm() < 1e-12);
  CHECK(std::abs(partial_trace(abc, {}, lat)(0, 0) - abc.trace()) < 1e-12);
}

TEST_CASE("bipartite reshape round trip and product rank") {
  Rng rng(3);
  Lattice lat(3, 2);
  Vector psi = superh::testing::gaussian(8, 1, rng).col(0);
  Matrix m = reshape_bipartite(psi, {2, 0}, lat);
  CHECK(m.rows() == 4);
  CHECK(m.cols() == 2);
  CHECK((unreshape_bipartite(m, {2, 0}, lat) - psi).norm() < 1e-14);

  Vector u = superh::testing::gaussian(2, 1, rng).col(0), v = superh::testing::gaussian(4, 1, rng).col(0);
  Vector prod = kron(u, v).col(0);
  Eigen::JacobiSVD<Matrix> svd(reshape_bipartite(prod, {0}, lat));
  CHECK(svd.singularValues()(1) < 1e-12);
}

TEST_CASE("hermitian powers") {
  Rng rng(4);
  Matrix a = superh::testing::random_psd(5, rng, 20.0);
  Matrix r = hermitian_power(a, 0.5);
  CHECK((r * r - a).norm() < 1e-12);
  CHECK((hermitian_power(a, -1.0) * a - identity(5)).norm() < 1e-10);
  Matrix singular = Matrix::Zero(2, 2);
  singular(0, 0) = 1.0;
  CHECK_THROWS_AS(hermitian_power(singular, -0.5), PreconditionError);
  Matrix negative = -identity(2);
  CHECK_THROWS_AS(hermitian_power(negative, 0.5), PreconditionError);
}

TEST_CASE("general spectrum of a block matrix matches the full solver") {
  Rng rng(5);
  Matrix m = Matrix::Zero(6, 6);
  m.block(0, 0, 2, 2) = superh::testing::gaussian(2, 2, rng);
  m.block(2, 2, 4, 4) = superh::testing::gaussian(4, 4, rng);
  CHECK(coupled_blocks(m).size() == 2);
  auto ours = general_spectrum(m);
  Eigen::ComplexEigenSolver<Matrix> es(m);
  std::vector<cplx> ref(es.eigenvalues().data(), es.eigenvalues().data() + 6);
  for (const auto& z : ref) {
    double best = 1e300;
    for (const auto& w : ours) best = std::min(best, std::abs(z - w));
    CHECK(best < 1e-10);
  }
  for (std::size_t i = 1; i < ours.size(); ++i) CHECK(ours[i - 1].real() <= ours[i].real());
}

TEST_CASE("hermitian spectrum ascending") {
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = -1.0;
  d(2, 2) = 2.0;
  RealVector w = hermitian_spectrum(d);
  CHECK(w(0) == doctest::Approx(-1.0));
  CHECK(w(2) == doctest::Approx(3.0));
  CHECK(trace_norm_hermitian(d) == doctest::Approx(6.0));
}

TEST_CASE("pauli basis is orthonormal with identity first") {
  Lattice lat(3, 2);
  auto basis = pauli_basis(lat, 2);
  CHECK(basis.size() == 1 + 9 + 27);
  CHECK((basis.elements[0] - identity(8) / std::sqrt(8.0)).norm() < 1e-14);
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b)
      CHECK(std::abs(hs_inner(basis.elements[a], basis.elements[b]) - (a == b ? 1.0 : 0.0)) < 1e-12);
  CHECK(pauli_basis(lat, 3).size() == 64);
  CHECK_THROWS(pauli_basis(Lattice(2, 3), 1));
}

TEST_CASE("norms and qubit operators") {
  Rng rng(6);
  Matrix m = superh::testing::gaussian(7, 7, rng);
  Eigen::JacobiSVD<Matrix> svd(m);
  CHECK(spectral_norm(m) == doctest::Approx(svd.singularValues()(0)).epsilon(1e-12));
  Vector one(2);
  one << 0.0, 1.0;
  Vector lowered = qubit::lowering() * one;
  CHECK(std::abs(lowered(0) - 1.0) < 1e-15);
  CHECK((qubit::raising() - qubit::lowering().adjoint()).norm() == 0.0);
  CHECK((qubit::number() + qubit::hole() - identity(2)).norm() == 0.0);
  CHECK(hermiticity_residual(qubit::pauli('Y')) == 0.0);
}
