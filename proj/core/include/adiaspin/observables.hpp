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

#pragma once

#include <map>
#include <string>

#include "adiaspin/linalg.hpp"
#include "adiaspin/model.hpp"

namespace adiaspin {

/// Entropies use the natural logarithm.
inline constexpr const char* kEntropyLogBase = "e";

/// Eigenvalues above -1e-8 are clamped to zero before taking logarithms.
inline constexpr double kEntropyClamp = 1e-8;

struct ObservableRecord {
  std::string label;
  double value = 0.0;
  double s_time = 0.0;
  int pulse_index = 0;
};

/// Diagonal of rho in the classical basis.
[[nodiscard]] std::map<ClassicalConfig, double> populations(const DensityMatrix& rho);

/// Tr(rho C_axis) with C_axis = sum_k sigma_k^axis; axis must be x or y.
[[nodiscard]] double coherence_expect(const DensityMatrix& rho, Axis axis);

/// 1/2 sum of singular values of a - b. Accepts any equal-shape matrices.
[[nodiscard]] double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);
[[nodiscard]] double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// -Tr rho ln rho. Throws DomainError if an eigenvalue is below -1e-8.
[[nodiscard]] double von_neumann_entropy(const DensityMatrix& rho);

/// S(diag rho) - S(rho).
[[nodiscard]] double entropy_of_coherence(const DensityMatrix& rho);

/// (1/N) sum_k Tr(rho n_k).
[[nodiscard]] double excitation_density(const DensityMatrix& rho);

}  // namespace adiaspin
