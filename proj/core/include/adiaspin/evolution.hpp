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

// Numerically exact integration of the driven master equation. This is the
// reference every adiabatic approximation is measured against.

#pragma once

#include <vector>

#include "adiaspin/integrator.hpp"
#include "adiaspin/linalg.hpp"
#include "adiaspin/model.hpp"
#include "adiaspin/pulse.hpp"

namespace adiaspin {

/// Snapshots of an evolution; times are strictly increasing. For multi-pulse
/// runs a time m + s means fraction s of pulse m + 1.
struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
};

/// -i[H, rho] + sum_k (L_k rho L_k^dagger - 1/2 {L_k^dagger L_k, rho}), written
/// out term by term for arbitrary H and jump operators.
[[nodiscard]] ComplexMatrix lindblad_rhs(const ComplexMatrix& hamiltonian, const std::vector<ComplexMatrix>& jumps,
                                         const ComplexMatrix& rho);

/// The lab-frame generator of the chain at transverse field omega_value.
[[nodiscard]] ComplexMatrix lindblad_rhs(const SpinChainModel& model, double omega_value, const DensityMatrix& rho);
[[nodiscard]] ComplexMatrix lindblad_rhs(const SpinChainModel& model, double omega_value, const ComplexMatrix& rho);

/// Lab-frame generator with the model's operators precomputed. Dephasing is
/// diagonal in the classical basis, so the dissipator acts as an elementwise
/// product D_ij rho_ij with D_ij = -(gamma/2) * hamming(i, j).
class LabFrameGenerator {
 public:
  explicit LabFrameGenerator(const SpinChainModel& model);

  void apply(double omega_value, const ComplexMatrix& rho, ComplexMatrix& out) const;
  [[nodiscard]] ComplexMatrix apply(double omega_value, const ComplexMatrix& rho) const;

  [[nodiscard]] const ComplexMatrix& static_hamiltonian() const noexcept { return static_part_; }
  [[nodiscard]] const ComplexMatrix& drive() const noexcept { return drive_; }
  [[nodiscard]] const RealMatrix& dephasing_factors() const noexcept { return dephasing_; }

 private:
  ComplexMatrix static_part_;
  ComplexMatrix drive_;
  RealMatrix dephasing_;
};

enum class FrameDirection { to_rotating, to_lab };

/// U_s = prod_k exp(-i omega(s) sigma_k^x).
[[nodiscard]] ComplexMatrix frame_unitary(const PulseProfile& pulse, double s, int n_sites);

/// to_rotating: U^dagger rho U;  to_lab: U rho U^dagger.
[[nodiscard]] DensityMatrix rotate_frame(const PulseProfile& pulse, double s, const DensityMatrix& rho,
                                         FrameDirection direction);
[[nodiscard]] ComplexMatrix rotate_frame(const PulseProfile& pulse, double s, const ComplexMatrix& m,
                                         FrameDirection direction);

/// Integrates d rho/ds = T L(Omega = g(s)/T)[rho] in the lab frame and
/// records the state at every point of s_grid (increasing, inside [0,1]).
/// No trace renormalization is applied.
[[nodiscard]] Trajectory evolve_exact(const SpinChainModel& model, const PulseProfile& pulse,
                                      const DensityMatrix& rho0, const std::vector<double>& s_grid,
                                      const IntegratorOptions& options = {});

/// Same evolution in the rotating frame, d rho_bar/ds = T Lbar(s)[rho_bar],
/// using the time-dependent projectors n_k(s). Input and output are
/// rotating-frame states.
[[nodiscard]] Trajectory evolve_exact_rotating(const SpinChainModel& model, const PulseProfile& pulse,
                                               const DensityMatrix& rho_bar0, const std::vector<double>& s_grid,
                                               const IntegratorOptions& options = {});

/// Applies n_pulses identical pulses back to back, recording snapshots at
/// m + s for every s in s_grid_per_pulse. Rotating-frame phases restart at
/// every pulse; the states stored are lab-frame states.
[[nodiscard]] Trajectory evolve_multi_pulse_exact(const SpinChainModel& model, const PulseProfile& pulse,
                                                  const DensityMatrix& rho0, int n_pulses,
                                                  const std::vector<double>& s_grid_per_pulse,
                                                  const IntegratorOptions& options = {});

}  // namespace adiaspin
