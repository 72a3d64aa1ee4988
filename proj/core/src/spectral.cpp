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

#include "adiaspin/spectral.hpp"

#include <string>
#include <utility>

#include "adiaspin/errors.hpp"
#include "adiaspin/evolution.hpp"

namespace adiaspin {
namespace {

void check_label(const EigenLabel& label, int n_sites) {
  if (label.q.size() != n_sites || label.p.size() != n_sites) {
    throw ShapeError("eigen label length does not match the chain");
  }
}

void check_label(const EigenLabel& label) {
  if (label.q.size() != label.p.size() || label.q.size() < 1) {
    throw ShapeError("eigen label configurations differ in length");
  }
}

void check_superoperator_size(const SpinChainModel& model) {
  if (model.n_sites() > kMaxSuperoperatorSites) {
    throw CapacityError("superoperators are only materialized for N <= " + std::to_string(kMaxSuperoperatorSites));
  }
}

}  // namespace

EigenValue eigenvalue(const SpinChainModel& model, const EigenLabel& label) {
  check_label(label, model.n_sites());
  return {-0.5 * model.gamma() * hamming_distance(label.q, label.p),
          -(model.classical_energy(label.q) - model.classical_energy(label.p))};
}

ComplexMatrix eigenmatrix(const PulseProfile& pulse, double s, const EigenLabel& label) {
  check_label(label);
  const int n = label.q.size();
  const ComplexMatrix u = frame_unitary(pulse, s, n);
  // U^dagger |q><p| U is the outer product of row q and row p of U.
  return u.row(label.q.index()).adjoint() * u.row(label.p.index());
}

ComplexMatrix derivative_P(const PulseProfile& pulse, double s, const EigenLabel& label) {
  check_label(label);
  const int n = label.q.size();
  const double g = pulse.g(s);
  const Index dim = Index{1} << n;
  if (g == 0.0) return ComplexMatrix::Zero(dim, dim);
  ComplexMatrix x = ComplexMatrix::Zero(dim, dim);
  for (int k = 1; k <= n; ++k) x += pauli(n, k, Axis::x);
  return kI * g * commutator(x, eigenmatrix(pulse, s, label));
}

RotatedGenerator::RotatedGenerator(const SpinChainModel& model, PulseProfile pulse)
    : model_(model), pulse_(std::move(pulse)), static_part_(hamiltonian(model, 0.0)) {
  for (int k = 1; k <= model.n_sites(); ++k) numbers_.push_back(number_op(model.n_sites(), k));
}

void RotatedGenerator::apply(double s, const ComplexMatrix& x, ComplexMatrix& out) const {
  if (x.rows() != model_.dim() || x.cols() != model_.dim()) throw ShapeError("RotatedGenerator: shape mismatch");
  const ComplexMatrix u = frame_unitary(pulse_, s, model_.n_sites());
  const ComplexMatrix h = u.adjoint() * static_part_ * u;
  out = -kI * commutator(h, x);
  const double gamma = model_.gamma();
  for (const ComplexMatrix& n_lab : numbers_) {
    const ComplexMatrix n = u.adjoint() * n_lab * u;
    // n is a projector, so L^dagger L = gamma n.
    out += gamma * (n * x * n - 0.5 * anticommutator(n, x));
  }
}

ComplexMatrix RotatedGenerator::apply(double s, const ComplexMatrix& x) const {
  ComplexMatrix out;
  apply(s, x, out);
  return out;
}

ComplexMatrix rotated_generator_apply(const SpinChainModel& model, const PulseProfile& pulse, double s,
                                      const ComplexMatrix& x) {
  return RotatedGenerator(model, pulse).apply(s, x);
}

ComplexMatrix lab_liouvillian(const SpinChainModel& model, double omega_value) {
  check_superoperator_size(model);
  const ComplexMatrix h = hamiltonian(model, omega_value);
  const ComplexMatrix id = identity(model.dim());
  // -i (I (x) H - H^T (x) I) + sum_k (L* (x) L - 1/2 I (x) L^dagger L - 1/2 (L^dagger L)^T (x) I)
  ComplexMatrix out = -kI * (sandwich_superop(h, id) - sandwich_superop(id, h));
  for (const ComplexMatrix& l : jump_ops(model)) {
    const ComplexMatrix ldl = l.adjoint() * l;
    out += sandwich_superop(l, l.adjoint()) - 0.5 * sandwich_superop(ldl, id) - 0.5 * sandwich_superop(id, ldl);
  }
  return out;
}

ComplexMatrix rotated_liouvillian(const SpinChainModel& model, const PulseProfile& pulse, double s) {
  check_superoperator_size(model);
  const RotatedGenerator generator(model, pulse);
  return superoperator_matrix(model.dim(), [&generator, s](const ComplexMatrix& x) { return generator.apply(s, x); });
}

}  // namespace adiaspin
