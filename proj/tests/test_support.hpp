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

// Random instance generators shared by the tests and the acceptance run.

#ifndef SUPERH_TESTS_TEST_SUPPORT_HPP_
#define SUPERH_TESTS_TEST_SUPPORT_HPP_

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/QR>

#include "superh/lindblad_model.hpp"
#include "superh/qdb_analysis.hpp"

namespace superh::testing {

using Rng = std::mt19937_64;

inline Matrix gaussian(long rows, long cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (long j = 0; j < cols; ++j)
    for (long i = 0; i < rows; ++i) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

inline Matrix haar_unitary(long n, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(n, n, rng));
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR();
  for (long i = 0; i < n; ++i) q.col(i) *= std::polar(1.0, -std::arg(r(i, i)));
  return q;
}

/// Full-rank density matrix with eigenvalues spread over [1, cond].
inline Matrix random_state(long n, Rng& rng, double cond = 10.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RealVector p(n);
  for (long i = 0; i < n; ++i) p(i) = std::exp(std::log(cond) * u(rng));
  p /= p.sum();
  Matrix v = haar_unitary(n, rng);
  return v * p.cast<cplx>().asDiagonal() * v.adjoint();
}

/// Hermitian PSD matrix with spectrum in [lambda_max / cond, lambda_max].
inline Matrix random_psd(long n, Rng& rng, double cond, double lambda_max = 1.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RealVector w(n);
  for (long i = 0; i < n; ++i) w(i) = lambda_max / cond + (lambda_max - lambda_max / cond) * u(rng);
  w(0) = lambda_max / cond;
  if (n > 1) w(1) = lambda_max;
  Matrix v = haar_unitary(n, rng);
  return v * w.cast<cplx>().asDiagonal() * v.adjoint();
}

struct QdbInstance {
  LindbladSpec spec;
  Matrix sigma;
};

/// Canonical-form detailed-balanced Lindbladian: a random subset of modular
/// eigenoperator pairs (S, S^dagger) with weights g exp(-omega/2) and
/// g exp(+omega/2), g uniform in [0.1, 1]. At least one pair is kept.
inline QdbInstance random_qdb(int n, Rng& rng, double keep_prob = 0.6) {
  Lattice lat(n, 2);
  QdbInstance inst;
  inst.sigma = random_state(lat.dim(), rng);
  ModularBasis mb = modular_basis(inst.sigma);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  inst.spec.lattice = lat;
  inst.spec.k = n;
  Sites all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  auto add_pair = [&](long a) {
    const long b = mb.partner[a];
    const double g = 0.1 + 0.9 * u(rng);
    const int idx = static_cast<int>(inst.spec.jumps.size());
    if (b == a) {
      inst.spec.jumps.push_back({mb.op(a), all, g, idx});
      return;
    }
    inst.spec.jumps.push_back({mb.op(a), all, g * std::exp(-mb.omega[a] / 2.0), idx + 1});
    inst.spec.jumps.push_back({mb.op(b), all, g * std::exp(-mb.omega[b] / 2.0), idx});
  };
  std::vector<long> chosen;
  for (long a = 1; a < mb.size(); ++a) {
    const long b = mb.partner[a];
    if (b < a) continue;
    if (u(rng) < keep_prob) chosen.push_back(a);
  }
  if (chosen.empty()) chosen.push_back(mb.size() - 1 > 0 ? std::min(mb.size() - 1, mb.dim) : 1);
  for (long a : chosen) add_pair(a);
  return inst;
}

}  // namespace superh::testing

#endif  // SUPERH_TESTS_TEST_SUPPORT_HPP_
