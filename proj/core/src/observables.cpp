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

#include "adiaspin/observables.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "adiaspin/errors.hpp"

namespace adiaspin {
namespace {

double entropy_of_spectrum(const RealVector& values) {
  double s = 0.0;
  for (Index i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (v < -kEntropyClamp) {
      throw DomainError("entropy: eigenvalue " + std::to_string(v) + " is below the positivity tolerance");
    }
    if (v > 0.0) s -= v * std::log(v);
  }
  return s;
}

}  // namespace

std::map<ClassicalConfig, double> populations(const DensityMatrix& rho) {
  std::map<ClassicalConfig, double> out;
  for (Index i = 0; i < rho.dim(); ++i) {
    out.emplace(ClassicalConfig::from_index(i, rho.n_sites()), rho.matrix()(i, i).real());
  }
  return out;
}

double coherence_expect(const DensityMatrix& rho, Axis axis) {
  if (axis == Axis::z) throw DomainError("coherence_expect: axis must be x or y");
  const ComplexMatrix& m = rho.matrix();
  // sigma_k^x and sigma_k^y only connect i and i ^ 2^(k-1), so the trace is a
  // sum over bit-flip pairs. <i|sigma^y|j> = +i if bit k of i is 0, -i otherwise.
  Complex total = 0.0;
  for (int k = 0; k < rho.n_sites(); ++k) {
    const Index bit = Index{1} << k;
    for (Index i = 0; i < rho.dim(); ++i) {
      const Index j = i ^ bit;
      // Tr(rho O) = sum_ij rho_ji O_ij
      const Complex o = axis == Axis::x ? Complex(1.0) : ((i & bit) == 0 ? kI : -kI);
      total += m(j, i) * o;
    }
  }
  return total.real();
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("trace_distance: shape mismatch");
  const ComplexMatrix diff = a - b;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(diff);
  return 0.5 * svd.singularValues().sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) { return trace_distance(a.matrix(), b.matrix()); }

double von_neumann_entropy(const DensityMatrix& rho) { return entropy_of_spectrum(hermitian_eigenvalues(rho.matrix())); }

double entropy_of_coherence(const DensityMatrix& rho) {
  return entropy_of_spectrum(rho.matrix().diagonal().real()) - von_neumann_entropy(rho);
}

double excitation_density(const DensityMatrix& rho) {
  double total = 0.0;
  for (Index i = 0; i < rho.dim(); ++i) {
    total += rho.matrix()(i, i).real() * std::popcount(static_cast<std::uint64_t>(i));
  }
  return total / rho.n_sites();
}

}  // namespace adiaspin
