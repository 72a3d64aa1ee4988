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

// Instantaneous spectrum of the rotating-frame generator. Its eigenmatrices
// are P_qp(s) = U_s^dagger |q><p| U_s with eigenvalues
//   lambda_qp = -(gamma/2) hamming(q, p) - i (E_q - E_p),
// where E_p is the classical energy (diagonal of H(0)).

#pragma once

#include <vector>

#include "adiaspin/linalg.hpp"
#include "adiaspin/model.hpp"
#include "adiaspin/pulse.hpp"

namespace adiaspin {

struct EigenLabel {
  ClassicalConfig q;
  ClassicalConfig p;
};

struct EigenValue {
  double r = 0.0;
  double c = 0.0;
  [[nodiscard]] Complex value() const noexcept { return {r, c}; }
};

[[nodiscard]] EigenValue eigenvalue(const SpinChainModel& model, const EigenLabel& label);

/// P_qp(s) = U_s^dagger |q><p| U_s.
[[nodiscard]] ComplexMatrix eigenmatrix(const PulseProfile& pulse, double s, const EigenLabel& label);

/// dP_qp/ds = i g(s) [sum_k sigma_k^x, P_qp(s)].
[[nodiscard]] ComplexMatrix derivative_P(const PulseProfile& pulse, double s, const EigenLabel& label);

/// Lbar(s)[X] = -i[Hbar(s), X] + gamma sum_k (n_k(s) X n_k(s) - 1/2 {n_k(s), X})
/// with n_k(s) = U_s^dagger n_k U_s and Hbar(s) = U_s^dagger H(0) U_s. The drive
/// term is absent: it cancels against the frame derivative.
class RotatedGenerator {
 public:
  RotatedGenerator(const SpinChainModel& model, PulseProfile pulse);

  void apply(double s, const ComplexMatrix& x, ComplexMatrix& out) const;
  [[nodiscard]] ComplexMatrix apply(double s, const ComplexMatrix& x) const;

 private:
  SpinChainModel model_;
  PulseProfile pulse_;
  ComplexMatrix static_part_;
  std::vector<ComplexMatrix> numbers_;
};

[[nodiscard]] ComplexMatrix rotated_generator_apply(const SpinChainModel& model, const PulseProfile& pulse, double s,
                                                    const ComplexMatrix& x);

/// Materialized 4^N x 4^N lab-frame Liouvillian at field omega_value (column
/// stacking). Throws CapacityError for N > kMaxSuperoperatorSites.
[[nodiscard]] ComplexMatrix lab_liouvillian(const SpinChainModel& model, double omega_value);

/// Materialized rotating-frame Liouvillian Lbar(s).
[[nodiscard]] ComplexMatrix rotated_liouvillian(const SpinChainModel& model, const PulseProfile& pulse, double s);

}  // namespace adiaspin
