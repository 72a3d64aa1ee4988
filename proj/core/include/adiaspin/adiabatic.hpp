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

// First-order adiabatic dynamics for classical initial states.
//
// For rho(0) diagonal in the classical basis and pulse duration T,
//
//   rho(s) ~ rho(0) + A(s)[rho(0)] / T ~ exp(A(s) / T)[rho(0)],
//   A(s)   = sum_k ( -i[K_k(s), .] + W_k(s) ),
//   K_k(s) = g(s) Lambda_k (Theta_k sigma_k^y + gamma/2 sigma_k^x),
//   W_k(s) = gamma G2(s) ( sqrt(Lambda_k) sigma_k^x . sigma_k^x sqrt(Lambda_k)
//                          - 1/2 {Lambda_k, .} ),
//
// with Theta_k = Delta + sum_{m != k} V_km n_m and Lambda_k = (gamma^2/4 + Theta_k^2)^-1.
// On classical states W_k coincides with gamma G2 Lambda_k (sigma^x . sigma^x - .);
// the symmetric form above also preserves Hermiticity on coherences.
//
// Every function takes the pulse duration T from PulseProfile::duration().

#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "adiaspin/integrator.hpp"
#include "adiaspin/linalg.hpp"
#include "adiaspin/model.hpp"
#include "adiaspin/pulse.hpp"

namespace adiaspin {

/// A linear map on 2^N x 2^N matrices.
class SuperOperator {
 public:
  using Action = std::function<ComplexMatrix(const ComplexMatrix&)>;

  SuperOperator(Index dim, Action action);

  [[nodiscard]] Index dim() const noexcept { return dim_; }
  [[nodiscard]] ComplexMatrix apply(const ComplexMatrix& x) const;
  [[nodiscard]] ComplexMatrix operator()(const ComplexMatrix& x) const { return apply(x); }
  /// The dim^2 x dim^2 column-stacked matrix. CapacityError above N = 5.
  [[nodiscard]] ComplexMatrix materialize() const;

 private:
  Index dim_;
  Action action_;
};

/// Diagonals of Theta_k and Lambda_k (index k-1 for site k) in the classical basis.
struct ConstraintOperators {
  std::vector<RealVector> theta;
  std::vector<RealVector> lambda;

  [[nodiscard]] ComplexMatrix theta_matrix(int site) const;
  [[nodiscard]] ComplexMatrix lambda_matrix(int site) const;
};

[[nodiscard]] ConstraintOperators constraint_operators(const SpinChainModel& model);

/// Generator W of the classical flip dynamics, dP/dt = W P on probability
/// vectors indexed by ClassicalConfig::index(). W(q, p) is the rate p -> q.
class ClassicalRateMatrix {
 public:
  /// Validates nonnegative off-diagonals, zero column sums (1e-12 relative)
  /// and single-flip support.
  explicit ClassicalRateMatrix(RealMatrix rates);

  [[nodiscard]] const RealMatrix& matrix() const noexcept { return rates_; }
  [[nodiscard]] Index dim() const noexcept { return rates_.rows(); }
  /// exp(t W).
  [[nodiscard]] RealMatrix propagator(double t) const;

 private:
  RealMatrix rates_;
};

[[nodiscard]] ComplexMatrix k_hamiltonian(const SpinChainModel& model, const PulseProfile& pulse, double s, int site);

/// W_k(s), applied with explicit operator products.
[[nodiscard]] SuperOperator w_superop(const SpinChainModel& model, const PulseProfile& pulse, double s, int site);

/// A(s). The action costs two dense products plus O(N 4^N) elementwise work.
[[nodiscard]] SuperOperator build_A(const SpinChainModel& model, const PulseProfile& pulse, double s);

/// f_pq(s) = -2 r_pq / |lambda_pq|^2 Tr[P_p (P_q')^2 P_p], evaluated with the
/// eigenmatrices themselves. Zero for p = q.
[[nodiscard]] double f_pq(const SpinChainModel& model, const PulseProfile& pulse, double s,
                          const ClassicalConfig& p, const ClassicalConfig& q);

/// int_0^s f_pq = gamma G2(s) / |lambda_pq|^2 for single flips, else 0.
[[nodiscard]] double f_pq_integral(const SpinChainModel& model, const PulseProfile& pulse, double s,
                                   const ClassicalConfig& p, const ClassicalConfig& q);

/// First-order adiabatic state from the explicit spectral sum over every
/// q != p, starting from |p><p|. Returned in the rotating frame; the
/// lab-frame state is rotate_frame(..., FrameDirection::to_lab).
[[nodiscard]] DensityMatrix first_order_direct(const SpinChainModel& model, const PulseProfile& pulse, double s,
                                               const ClassicalConfig& p);

enum class MapMode { linear, exponential };

/// How exp(A(s)/T) is evaluated. automatic materializes the superoperator for
/// N <= 4 and integrates d rho/d tau = A(s)[rho] over tau in [0, 1/T] beyond.
enum class ExpMethod { automatic, materialized, integrated };

/// rho0 + A(s)[rho0]/T (linear) or exp(A(s)/T)[rho0] (exponential), as a
/// lab-frame state. Throws ValidationError if rho0 has coherences.
[[nodiscard]] DensityMatrix apply_first_order_map(const SpinChainModel& model, const PulseProfile& pulse, double s,
                                                  const DensityMatrix& rho0, MapMode mode,
                                                  ExpMethod method = ExpMethod::automatic);

/// W(p -> p flipped at k) = gamma G2(1) Lambda_k(p).
[[nodiscard]] ClassicalRateMatrix classical_rate_matrix(const SpinChainModel& model, const PulseProfile& pulse);

/// exp((m/T) W) applied to the populations of a diagonal rho0.
[[nodiscard]] DensityMatrix multi_pulse_map(const SpinChainModel& model, const PulseProfile& pulse,
                                            const DensityMatrix& rho0, int n_pulses);

/// exp((m/T) A(1)) on the full operator space; a cross-check of multi_pulse_map.
[[nodiscard]] DensityMatrix multi_pulse_map_superoperator(const SpinChainModel& model, const PulseProfile& pulse,
                                                          const DensityMatrix& rho0, int n_pulses);

/// exp(A(s)/T) o exp((m/T) A(1)) [rho0] for 0 < s < 1.
[[nodiscard]] DensityMatrix fractional_pulse_state(const SpinChainModel& model, const PulseProfile& pulse,
                                                   const DensityMatrix& rho0, int n_pulses, double s,
                                                   ExpMethod method = ExpMethod::automatic);

}  // namespace adiaspin
