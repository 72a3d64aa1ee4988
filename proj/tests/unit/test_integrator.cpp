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
#include "adiaspin/integrator.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace adiaspin;

TEST_CASE("scalar exponential decay") {
  DormandPrince dp([](double, const ComplexMatrix& y, ComplexMatrix& dy) { dy = -2.0 * y; });
  ComplexMatrix y = ComplexMatrix::Constant(1, 1, Complex(1.0, 0.0));
  dp.advance(0.0, 3.0, y);
  CHECK(std::abs(y(0, 0) - std::exp(-6.0)) <= 1e-10);
  CHECK(dp.stats().accepted > 0);
}

TEST_CASE("constant linear system matches a Taylor exponential") {
  std::mt19937_64 rng(9);
  const oracle::Matrix h = oracle::random_hermitian(rng, 4);
  const oracle::Matrix a = -oracle::kI * h - 0.3 * oracle::Matrix::Identity(4, 4);
  const ComplexMatrix gen = a;
  DormandPrince dp([&](double, const ComplexMatrix& y, ComplexMatrix& dy) { dy.noalias() = gen * y; });
  ComplexMatrix y = identity(4);
  dp.advance(0.0, 2.0, y);
  const oracle::Matrix want = oracle::taylor_expm_squared(oracle::Matrix(2.0 * a));
  CHECK(oracle::max_abs(oracle::Matrix(y) - want) <= 1e-8);
}

TEST_CASE("time-dependent rhs with a known solution") {
  // dy/dt = cos(t) y  =>  y = exp(sin t)
  DormandPrince dp([](double t, const ComplexMatrix& y, ComplexMatrix& dy) { dy = std::cos(t) * y; });
  ComplexMatrix y = ComplexMatrix::Constant(1, 1, Complex(1.0, 0.0));
  double t = 0.0;
  for (int i = 1; i <= 10; ++i) {
    dp.advance(t, 0.7 * i, y);
    t = 0.7 * i;
    CHECK(std::abs(y(0, 0) - std::exp(std::sin(t))) <= 1e-9);
  }
}

TEST_CASE("tighter tolerance gives a closer answer") {
  const auto run = [](double rtol) {
    IntegratorOptions opt;
    opt.rtol = rtol;
    opt.atol = rtol * 1e-2;
    DormandPrince dp([](double t, const ComplexMatrix& y, ComplexMatrix& dy) { dy = kI * (5.0 * t) * y; }, opt);
    ComplexMatrix y = ComplexMatrix::Constant(1, 1, Complex(1.0, 0.0));
    dp.advance(0.0, 4.0, y);
    return std::abs(y(0, 0) - std::exp(kI * 40.0));
  };
  const double loose = run(1e-6);
  const double tight = run(1e-11);
  CHECK(tight < loose);
  CHECK(tight <= 1e-9);
}

TEST_CASE("step budget exhaustion raises a convergence error") {
  IntegratorOptions opt;
  opt.max_steps = 5;
  DormandPrince dp([](double, const ComplexMatrix& y, ComplexMatrix& dy) { dy = kI * 100.0 * y; }, opt);
  ComplexMatrix y = ComplexMatrix::Constant(1, 1, Complex(1.0, 0.0));
  try {
    dp.advance(0.0, 100.0, y);
    FAIL("expected a convergence error");
  } catch (const ConvergenceError& e) {
    CHECK(e.kind() == "convergence");
    CHECK(e.reached_time() < 100.0);
    CHECK(std::isfinite(e.achieved_error()));
  }
}

TEST_CASE("invalid arguments") {
  DormandPrince dp([](double, const ComplexMatrix& y, ComplexMatrix& dy) { dy = y; });
  ComplexMatrix y = ComplexMatrix::Ones(1, 1);
  CHECK_THROWS_AS(dp.advance(1.0, 0.0, y), ValidationError);
  IntegratorOptions bad;
  bad.rtol = 0.0;
  CHECK_THROWS_AS(DormandPrince([](double, const ComplexMatrix&, ComplexMatrix&) {}, bad), ValidationError);
  // Empty interval leaves y alone.
  dp.advance(0.5, 0.5, y);
  CHECK(y(0, 0) == Complex(1.0));
}

TEST_CASE("reusing an integrator across changed states stays correct") {
  DormandPrince dp([](double, const ComplexMatrix& y, ComplexMatrix& dy) { dy = -y; });
  ComplexMatrix y = ComplexMatrix::Ones(1, 1);
  dp.advance(0.0, 1.0, y);
  y(0, 0) = 2.0;  // external modification invalidates cached stages
  dp.advance(1.0, 2.0, y);
  CHECK(std::abs(y(0, 0) - 2.0 * std::exp(-1.0)) <= 1e-10);
}
