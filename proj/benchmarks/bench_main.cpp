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

#include <benchmark/benchmark.h>

#include "adiaspin/adiabatic.hpp"
#include "adiaspin/evolution.hpp"

namespace {

using adiaspin::ComplexMatrix;

ComplexMatrix mixed_state(adiaspin::Index dim) {
  ComplexMatrix rho = ComplexMatrix::Constant(dim, dim, adiaspin::Complex(0.1 / dim, 0.02 / dim));
  rho.diagonal().setConstant(1.0 / dim);
  return rho;
}

// Lab-frame right-hand side, the inner loop of every exact integration.
void BM_LabRhs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const adiaspin::SpinChainModel model(n, 0.0, 3.0, 3.0, 1.0);
  const adiaspin::LabFrameGenerator gen(model);
  const ComplexMatrix rho = mixed_state(model.dim());
  ComplexMatrix out;
  for (auto _ : state) {
    gen.apply(0.7, rho, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_LabRhs)->DenseRange(2, 8, 2);

void BM_Expm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const adiaspin::SpinChainModel model(n, 0.5, 3.0, 3.0, 1.0);
  const ComplexMatrix h = -adiaspin::kI * adiaspin::hamiltonian(model, 1.3);
  for (auto _ : state) benchmark::DoNotOptimize(adiaspin::expm(h).data());
}
BENCHMARK(BM_Expm)->DenseRange(2, 8, 2);

void BM_BuildAndApplyA(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const adiaspin::SpinChainModel model(n, 0.0, 3.0, 3.0, 1.0);
  const auto pulse = adiaspin::PulseProfile::default_pulse(400.0);
  const ComplexMatrix rho = mixed_state(model.dim());
  for (auto _ : state) {
    const adiaspin::SuperOperator a = adiaspin::build_A(model, pulse, 0.37);
    benchmark::DoNotOptimize(a(rho).data());
  }
}
BENCHMARK(BM_BuildAndApplyA)->DenseRange(2, 8, 2);

// One full pulse at T gamma = 400 from |0...0>.
void BM_OnePulse(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const adiaspin::SpinChainModel model(n, 0.0, 3.0, 3.0, 1.0);
  const auto pulse = adiaspin::PulseProfile::default_pulse(400.0);
  const auto rho0 = adiaspin::DensityMatrix::basis_state(n, 0);
  for (auto _ : state) {
    auto traj = adiaspin::evolve_exact(model, pulse, rho0, {1.0});
    benchmark::DoNotOptimize(traj.states.back().matrix().data());
  }
}
BENCHMARK(BM_OnePulse)->DenseRange(2, 4, 1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
