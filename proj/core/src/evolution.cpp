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

#include "adiaspin/evolution.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "adiaspin/errors.hpp"
#include "adiaspin/spectral.hpp"

namespace adiaspin {
namespace {

void check_state_dim(const SpinChainModel& model, Index rows, Index cols, const char* where) {
  if (rows != model.dim() || cols != model.dim()) {
    throw ShapeError(std::string(where) + ": state is " + std::to_string(rows) + "x" + std::to_string(cols) +
                     ", model needs " + std::to_string(model.dim()));
  }
}

void check_grid(const std::vector<double>& grid, const char* where) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) {
      throw ValidationError(std::string(where) + ": s_grid values must lie in [0, 1]");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw ValidationError(std::string(where) + ": s_grid must be strictly increasing");
    }
  }
}

}  // namespace

ComplexMatrix lindblad_rhs(const ComplexMatrix& hamiltonian, const std::vector<ComplexMatrix>& jumps,
                           const ComplexMatrix& rho) {
  if (hamiltonian.rows() != rho.rows() || hamiltonian.cols() != rho.cols() || rho.rows() != rho.cols()) {
    throw ShapeError("lindblad_rhs: Hamiltonian and state dimensions differ");
  }
  ComplexMatrix out = -kI * commutator(hamiltonian, rho);
  for (const ComplexMatrix& l : jumps) {
    if (l.rows() != rho.rows() || l.cols() != rho.cols()) throw ShapeError("lindblad_rhs: jump operator shape");
    const ComplexMatrix ldl = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * anticommutator(ldl, rho);
  }
  return out;
}

ComplexMatrix lindblad_rhs(const SpinChainModel& model, double omega_value, const ComplexMatrix& rho) {
  check_state_dim(model, rho.rows(), rho.cols(), "lindblad_rhs");
  return lindblad_rhs(hamiltonian(model, omega_value), jump_ops(model), rho);
}

ComplexMatrix lindblad_rhs(const SpinChainModel& model, double omega_value, const DensityMatrix& rho) {
  return lindblad_rhs(model, omega_value, rho.matrix());
}

LabFrameGenerator::LabFrameGenerator(const SpinChainModel& model) {
  HamiltonianParts parts = hamiltonian_parts(model);
  static_part_ = std::move(parts.static_part);
  drive_ = std::move(parts.drive);
  const Index dim = model.dim();
  dephasing_.resize(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) {
      dephasing_(i, j) = -0.5 * model.gamma() * std::popcount(static_cast<std::uint64_t>(i ^ j));
    }
  }
}

void LabFrameGenerator::apply(double omega_value, const ComplexMatrix& rho, ComplexMatrix& out) const {
  if (rho.rows() != static_part_.rows() || rho.cols() != static_part_.cols()) {
    throw ShapeError("LabFrameGenerator: state dimension mismatch");
  }
  // -i[H0 + Omega X, rho] + D o rho
  out.noalias() = static_part_ * rho;
  out.noalias() -= rho * static_part_;
  if (omega_value != 0.0) {
    out.noalias() += omega_value * (drive_ * rho);
    out.noalias() -= omega_value * (rho * drive_);
  }
  out *= -kI;
  out.array() += rho.array() * dephasing_.array().cast<Complex>();
}

ComplexMatrix LabFrameGenerator::apply(double omega_value, const ComplexMatrix& rho) const {
  ComplexMatrix out(rho.rows(), rho.cols());
  apply(omega_value, rho, out);
  return out;
}

ComplexMatrix frame_unitary(const PulseProfile& pulse, double s, int n_sites) {
  if (n_sites < 1 || n_sites > kMaxMatrixSites) throw CapacityError("frame_unitary: unsupported chain length");
  const double w = pulse.omega(s);
  ComplexMatrix single(2, 2);
  single << std::cos(w), -kI * std::sin(w), -kI * std::sin(w), std::cos(w);
  ComplexMatrix u = single;
  for (int k = 2; k <= n_sites; ++k) u = kron(single, u);
  return u;
}

ComplexMatrix rotate_frame(const PulseProfile& pulse, double s, const ComplexMatrix& m, FrameDirection direction) {
  const int n = sites_for_dimension(m.rows());
  if (n < 1 || m.rows() != m.cols()) throw ShapeError("rotate_frame: matrix must be 2^N x 2^N");
  const ComplexMatrix u = frame_unitary(pulse, s, n);
  if (direction == FrameDirection::to_rotating) return u.adjoint() * m * u;
  return u * m * u.adjoint();
}

DensityMatrix rotate_frame(const PulseProfile& pulse, double s, const DensityMatrix& rho, FrameDirection direction) {
  ComplexMatrix m = rotate_frame(pulse, s, rho.matrix(), direction);
  // Restore exact Hermiticity lost to round-off in the two products.
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix(std::move(m));
}

namespace {

DensityMatrix hermitian_part(const ComplexMatrix& y) {
  ComplexMatrix h = 0.5 * (y + y.adjoint());
  return DensityMatrix(std::move(h));
}

// Integrates along the grid with one integrator so the step size carries over.
Trajectory integrate_on_grid(DormandPrince& integrator, ComplexMatrix y, const std::vector<double>& s_grid,
                             double offset, Trajectory trajectory = {}) {
  double s = 0.0;
  for (double target : s_grid) {
    integrator.advance(s, target, y);
    s = target;
    trajectory.times.push_back(offset + target);
    trajectory.states.push_back(hermitian_part(y));
  }
  return trajectory;
}

}  // namespace

Trajectory evolve_exact(const SpinChainModel& model, const PulseProfile& pulse, const DensityMatrix& rho0,
                        const std::vector<double>& s_grid, const IntegratorOptions& options) {
  check_state_dim(model, rho0.dim(), rho0.dim(), "evolve_exact");
  check_grid(s_grid, "evolve_exact");
  const LabFrameGenerator generator(model);
  const double duration = pulse.duration();
  // d rho/ds = T L(g(s)/T)[rho]
  DormandPrince integrator(
      [&generator, &pulse, duration](double s, const ComplexMatrix& y, ComplexMatrix& dy) {
        generator.apply(pulse.g(s) / duration, y, dy);
        dy *= duration;
      },
      options);
  return integrate_on_grid(integrator, rho0.matrix(), s_grid, 0.0);
}

Trajectory evolve_exact_rotating(const SpinChainModel& model, const PulseProfile& pulse,
                                 const DensityMatrix& rho_bar0, const std::vector<double>& s_grid,
                                 const IntegratorOptions& options) {
  check_state_dim(model, rho_bar0.dim(), rho_bar0.dim(), "evolve_exact_rotating");
  check_grid(s_grid, "evolve_exact_rotating");
  const RotatedGenerator generator(model, pulse);
  const double duration = pulse.duration();
  DormandPrince integrator(
      [&generator, duration](double s, const ComplexMatrix& y, ComplexMatrix& dy) {
        generator.apply(s, y, dy);
        dy *= duration;
      },
      options);
  return integrate_on_grid(integrator, rho_bar0.matrix(), s_grid, 0.0);
}

Trajectory evolve_multi_pulse_exact(const SpinChainModel& model, const PulseProfile& pulse,
                                    const DensityMatrix& rho0, int n_pulses,
                                    const std::vector<double>& s_grid_per_pulse, const IntegratorOptions& options) {
  if (n_pulses < 0) throw ValidationError("evolve_multi_pulse_exact: n_pulses must be nonnegative");
  check_state_dim(model, rho0.dim(), rho0.dim(), "evolve_multi_pulse_exact");
  check_grid(s_grid_per_pulse, "evolve_multi_pulse_exact");
  Trajectory trajectory;
  if (n_pulses == 0) {
    trajectory.times.push_back(0.0);
    trajectory.states.push_back(rho0);
    return trajectory;
  }
  // Every pulse must end at s = 1 so the next one starts from the right state.
  std::vector<double> grid = s_grid_per_pulse;
  const bool record_end = !grid.empty() && grid.back() == 1.0;
  if (!record_end) grid.push_back(1.0);

  const LabFrameGenerator generator(model);
  const double duration = pulse.duration();
  DormandPrince integrator(
      [&generator, &pulse, duration](double s, const ComplexMatrix& y, ComplexMatrix& dy) {
        generator.apply(pulse.g(s) / duration, y, dy);
        dy *= duration;
      },
      options);

  ComplexMatrix y = rho0.matrix();
  for (int m = 0; m < n_pulses; ++m) {
    double s = 0.0;
    for (double target : grid) {
      integrator.advance(s, target, y);
      s = target;
      const bool is_sample = target != 1.0 || record_end;
      // s = 0 of pulse m + 1 coincides with s = 1 of pulse m; keep one copy.
      const double time = m + target;
      if (is_sample && (trajectory.times.empty() || time > trajectory.times.back())) {
        trajectory.times.push_back(time);
        trajectory.states.push_back(hermitian_part(y));
      }
    }
  }
  return trajectory;
}

}  // namespace adiaspin
