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

// Dissipative Ising chain with power-law interactions and local dephasing:
//
//   H(Omega) = sum_k [Delta n_k + Omega sigma_k^x] + 1/2 sum_{k,m} V_km n_k n_m
//   L_k      = sqrt(gamma) n_k,           V_km = V0 |k - m|^-alpha,  V_kk = 0
//
// Open boundary conditions. Single-site conventions in the (|0>, |1>) basis:
// sigma^z = diag(-1, +1) so that n = (1 + sigma^z)/2 projects onto |1>, and
// sigma^y = -i sigma^z sigma^x = [[0, i], [-i, 0]].

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "adiaspin/linalg.hpp"

namespace adiaspin {

enum class Axis { x, y, z };

/// 2x2 Pauli matrix in the (|0>, |1>) basis.
[[nodiscard]] ComplexMatrix single_site_pauli(Axis axis);

/// Pauli matrix acting on `site` (1-based) of an n_sites chain.
[[nodiscard]] ComplexMatrix pauli(int n_sites, int site, Axis axis);

/// n_k = (1 + sigma_k^z) / 2.
[[nodiscard]] ComplexMatrix number_op(int n_sites, int site);

/// A bitstring p in {0,1}^N. Site k (1-based) is bit k-1 of index().
class ClassicalConfig {
 public:
  ClassicalConfig() = default;
  explicit ClassicalConfig(std::vector<std::uint8_t> bits);

  static ClassicalConfig from_index(Index index, int n_sites);
  /// Parses "0101" with the first character being site 1.
  static ClassicalConfig parse(const std::string& text);

  [[nodiscard]] int size() const noexcept { return static_cast<int>(bits_.size()); }
  /// Occupation of `site` (1-based).
  [[nodiscard]] int bit(int site) const;
  [[nodiscard]] Index index() const noexcept;
  [[nodiscard]] int excitations() const noexcept;
  [[nodiscard]] ClassicalConfig flipped(int site) const;
  /// Site-1-first bitstring, inverse of parse().
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const ClassicalConfig&, const ClassicalConfig&) = default;
  friend auto operator<=>(const ClassicalConfig& a, const ClassicalConfig& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  std::vector<std::uint8_t> bits_;
};

[[nodiscard]] int hamming_distance(const ClassicalConfig& a, const ClassicalConfig& b);

/// Probability weights a_p over configurations; a_p >= 0, sum 1 within 1e-12.
class ClassicalMixture {
 public:
  static constexpr double kNormTolerance = 1e-12;

  ClassicalMixture(int n_sites, std::vector<std::pair<ClassicalConfig, double>> weights);

  static ClassicalMixture pure(const ClassicalConfig& config);
  static ClassicalMixture uniform(int n_sites);

  [[nodiscard]] int n_sites() const noexcept { return n_sites_; }
  /// Dense probability vector indexed by ClassicalConfig::index().
  [[nodiscard]] const RealVector& probabilities() const noexcept { return probabilities_; }

 private:
  int n_sites_;
  RealVector probabilities_;
};

/// Static chain parameters, all rates and fields in units of gamma's unit.
class SpinChainModel {
 public:
  SpinChainModel(int n_sites, double delta, double v0, double alpha, double gamma);

  [[nodiscard]] int n_sites() const noexcept { return n_sites_; }
  [[nodiscard]] Index dim() const noexcept { return Index{1} << n_sites_; }
  [[nodiscard]] double delta() const noexcept { return delta_; }
  [[nodiscard]] double v0() const noexcept { return v0_; }
  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] double gamma() const noexcept { return gamma_; }

  /// V_km for 1-based sites.
  [[nodiscard]] double interaction(int k, int m) const;
  [[nodiscard]] const RealMatrix& interaction_matrix() const noexcept { return interactions_; }

  /// E_p = Delta sum_k p_k + 1/2 sum_{k,m} V_km p_k p_m, the diagonal of H(0).
  [[nodiscard]] double classical_energy(const ClassicalConfig& p) const;

 private:
  int n_sites_;
  double delta_;
  double v0_;
  double alpha_;
  double gamma_;
  RealMatrix interactions_;
};

[[nodiscard]] ComplexMatrix hamiltonian(const SpinChainModel& model, double omega_value);

/// The drive-free part H(0) and the drive operator sum_k sigma_k^x, so that
/// H(Omega) = static + Omega * drive.
struct HamiltonianParts {
  ComplexMatrix static_part;
  ComplexMatrix drive;
};
[[nodiscard]] HamiltonianParts hamiltonian_parts(const SpinChainModel& model);

/// L_k = sqrt(gamma) n_k for k = 1..N.
[[nodiscard]] std::vector<ComplexMatrix> jump_ops(const SpinChainModel& model);

[[nodiscard]] DensityMatrix mixture_to_density(const ClassicalMixture& mix);

}  // namespace adiaspin
