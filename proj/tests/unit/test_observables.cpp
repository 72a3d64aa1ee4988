// Copyright 2026 The adiaspin Authors
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

#include <cmath>
#include <random>

#include "adiaspin/errors.hpp"
#include "adiaspin/observables.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace adiaspin;

namespace {

DensityMatrix plus_state() { return DensityMatrix(ComplexMatrix::Constant(2, 2, Complex(0.5))); }

DensityMatrix dephased(const DensityMatrix& rho) {
  ComplexMatrix d = ComplexMatrix::Zero(rho.dim(), rho.dim());
  d.diagonal() = rho.matrix().diagonal();
  return DensityMatrix(d);
}

// Explicit eigenvalue entropy via the characteristic polynomial of a 2x2.
double entropy_2x2(const ComplexMatrix& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double b = std::norm(m(0, 1));
  const double disc = std::sqrt((a - d) * (a - d) / 4 + b);
  double s = 0.0;
  for (double l : {(a + d) / 2 + disc, (a + d) / 2 - disc}) {
    if (l > 0) s -= l * std::log(l);
  }
  return s;
}

}  // namespace

TEST_CASE("populations") {
  const auto pure = populations(DensityMatrix::basis_state(2, 0));
  CHECK(pure.at(ClassicalConfig::parse("00")) == 1.0);
  CHECK(pure.at(ClassicalConfig::parse("10")) == 0.0);
  CHECK(pure.size() == 4);
  for (const auto& [config, p] : populations(DensityMatrix::maximally_mixed(2))) CHECK(p == 0.25);

  std::mt19937_64 rng(1);
  const DensityMatrix rho(ComplexMatrix(oracle::random_density(rng, 8)));
  double total = 0.0;
  for (const auto& [config, p] : populations(rho)) {
    total += p;
    CHECK(p == rho.matrix()(config.index(), config.index()).real());
  }
  CHECK(std::abs(total - 1.0) <= 1e-12);
}

TEST_CASE("coherence expectations") {
  std::mt19937_64 rng(2);
  const RealVector probs = oracle::random_probabilities(rng, 4);
  const DensityMatrix d(ComplexMatrix(probs.cast<Complex>().asDiagonal()));
  CHECK(coherence_expect(d, Axis::x) == 0.0);
  CHECK(coherence_expect(d, Axis::y) == 0.0);
  CHECK(std::abs(coherence_expect(plus_state(), Axis::x) - 1.0) <= 1e-15);
  CHECK(std::abs(coherence_expect(plus_state(), Axis::y)) <= 1e-15);
  CHECK_THROWS_AS((void)coherence_expect(d, Axis::z), DomainError);

  // Tr(rho C) with C built from the library Pauli operators.
  const DensityMatrix rho(ComplexMatrix(oracle::random_density(rng, 8)));
  for (const Axis axis : {Axis::x, Axis::y}) {
    ComplexMatrix c = ComplexMatrix::Zero(8, 8);
    for (int k = 1; k <= 3; ++k) c += pauli(3, k, axis);
    const Complex want = (rho.matrix() * c).trace();
    CHECK(std::abs(want.imag()) <= 1e-12);
    CHECK(std::abs(coherence_expect(rho, axis) - want.real()) <= 1e-12);
  }
}

TEST_CASE("trace distance examples") {
  const DensityMatrix zero = DensityMatrix::basis_state(1, 0);
  const DensityMatrix one = DensityMatrix::basis_state(1, 1);
  CHECK(trace_distance(zero, zero) == 0.0);
  CHECK(std::abs(trace_distance(zero, one) - 1.0) <= 1e-15);
  CHECK(std::abs(trace_distance(zero, DensityMatrix::maximally_mixed(1)) - 0.5) <= 1e-15);
  CHECK_THROWS_AS((void)trace_distance(zero, DensityMatrix::basis_state(2, 0)), ShapeError);
}

TEST_CASE("trace distance is a metric") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix a(ComplexMatrix(oracle::random_density(rng, 4)));
    const DensityMatrix b(ComplexMatrix(trial % 2 ? oracle::random_pure(rng, 4) : oracle::random_density(rng, 4)));
    const DensityMatrix c(ComplexMatrix(oracle::random_density(rng, 4)));
    const double ab = trace_distance(a, b);
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0 + 1e-10);
    CHECK(std::abs(ab - trace_distance(b, a)) <= 1e-12);
    CHECK(ab <= trace_distance(a, c) + trace_distance(c, b) + 1e-10);
    CHECK(trace_distance(a, a) <= 1e-10);
    // For Hermitian differences the trace norm is the sum of |eigenvalues|.
    const RealVector ev = hermitian_eigenvalues(ComplexMatrix(a.matrix() - b.matrix()));
    CHECK(std::abs(ab - 0.5 * ev.cwiseAbs().sum()) <= 1e-12);
  }
}

TEST_CASE("von Neumann entropy") {
  CHECK(std::string(kEntropyLogBase) == "e");
  CHECK(std::abs(von_neumann_entropy(DensityMatrix::basis_state(2, 1))) <= 1e-14);
  std::mt19937_64 rng(4);
  CHECK(std::abs(von_neumann_entropy(DensityMatrix(ComplexMatrix(oracle::random_pure(rng, 8))))) <= 1e-10);
  for (int n = 1; n <= 4; ++n) {
    CHECK(std::abs(von_neumann_entropy(DensityMatrix::maximally_mixed(n)) - n * std::log(2.0)) <= 1e-12);
  }
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 0.3;
  d(1, 1) = 0.7;
  CHECK(std::abs(von_neumann_entropy(DensityMatrix(d)) - (-0.3 * std::log(0.3) - 0.7 * std::log(0.7))) <= 1e-14);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix m = oracle::random_density(rng, 2);
    CHECK(std::abs(von_neumann_entropy(DensityMatrix(m)) - entropy_2x2(m)) <= 1e-12);
  }
}

TEST_CASE("entropy clamps round-off and rejects real negativity") {
  ComplexMatrix slightly = ComplexMatrix::Zero(2, 2);
  slightly(0, 0) = 1.0 + 1e-9;
  slightly(1, 1) = -1e-9;
  CHECK(std::abs(von_neumann_entropy(DensityMatrix(slightly))) <= 1e-7);
  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 0) = 1.1;
  bad(1, 1) = -0.1;
  CHECK_THROWS_AS((void)von_neumann_entropy(DensityMatrix(bad)), DomainError);
}

TEST_CASE("entropy of coherence") {
  std::mt19937_64 rng(5);
  const RealVector probs = oracle::random_probabilities(rng, 8);
  CHECK(std::abs(entropy_of_coherence(DensityMatrix(ComplexMatrix(probs.cast<Complex>().asDiagonal())))) <= 1e-14);
  CHECK(std::abs(entropy_of_coherence(plus_state()) - std::log(2.0)) <= 1e-12);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho(ComplexMatrix(oracle::random_density(rng, 8)));
    CHECK(entropy_of_coherence(rho) >= -1e-10);
    CHECK(std::abs(entropy_of_coherence(dephased(rho))) <= 1e-12);
  }
}

TEST_CASE("entropy is unitarily invariant") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    const oracle::Matrix rho = oracle::random_density(rng, 8);
    const oracle::Matrix u = oracle::taylor_expm_squared(oracle::Matrix(-oracle::kI * oracle::random_hermitian(rng, 8)));
    const DensityMatrix a{ComplexMatrix(rho)};
    const DensityMatrix b{ComplexMatrix(u * rho * u.adjoint())};
    CHECK(std::abs(von_neumann_entropy(a) - von_neumann_entropy(b)) <= 1e-10);
  }
}

TEST_CASE("excitation density") {
  CHECK(excitation_density(DensityMatrix::basis_state(3, 0)) == 0.0);
  CHECK(std::abs(excitation_density(DensityMatrix::basis_state(3, 7)) - 1.0) <= 1e-15);
  CHECK(std::abs(excitation_density(DensityMatrix::maximally_mixed(3)) - 0.5) <= 1e-15);
  CHECK(std::abs(excitation_density(DensityMatrix::basis_state(4, 0b0110)) - 0.5) <= 1e-15);
  std::mt19937_64 rng(7);
  const DensityMatrix rho(ComplexMatrix(oracle::random_density(rng, 8)));
  double want = 0.0;
  for (int k = 1; k <= 3; ++k) want += (rho.matrix() * number_op(3, k)).trace().real();
  CHECK(std::abs(excitation_density(rho) - want / 3) <= 1e-14);
}
