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

#include "adiaspin/adiabatic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "adiaspin/errors.hpp"
#include "adiaspin/evolution.hpp"
#include "adiaspin/spectral.hpp"

namespace adiaspin {
namespace {

constexpr double kDiagonalTolerance = 1e-12;
constexpr int kMaterializeLimit = 4;

void check_site(const SpinChainModel& model, int site) {
  if (site < 1 || site > model.n_sites()) {
    throw IndexError("site " + std::to_string(site) + " outside [1, " + std::to_string(model.n_sites()) + "]");
  }
}

void check_diagonal_input(const SpinChainModel& model, const DensityMatrix& rho0, const char* where) {
  if (rho0.dim() != model.dim()) throw ShapeError(std::string(where) + ": state dimension mismatch");
  if (!rho0.is_diagonal(kDiagonalTolerance)) {
    throw ValidationError(std::string(where) + ": initial state must be diagonal in the classical basis");
  }
}

ComplexMatrix diagonal_matrix(const RealVector& d) { return d.cast<Complex>().asDiagonal(); }

DensityMatrix to_density(const ComplexMatrix& m) {
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  return DensityMatrix(std::move(h));
}

DensityMatrix from_probabilities(const RealVector& p) {
  ComplexMatrix m = diagonal_matrix(p);
  return DensityMatrix(std::move(m));
}

struct GeneratorData {
  ComplexMatrix k_total;
  // rate(k, i) = gamma G2(s) Lambda_k(i), stored per site.
  std::vector<RealVector> rate;
  std::vector<RealVector> sqrt_rate;
};

}  // namespace

SuperOperator::SuperOperator(Index dim, Action action) : dim_(dim), action_(std::move(action)) {
  if (dim_ < 1) throw ShapeError("SuperOperator: dimension must be positive");
  if (!action_) throw ValidationError("SuperOperator: missing action");
}

ComplexMatrix SuperOperator::apply(const ComplexMatrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_) throw ShapeError("SuperOperator: input shape mismatch");
  return action_(x);
}

ComplexMatrix SuperOperator::materialize() const {
  if (sites_for_dimension(dim_) > kMaxSuperoperatorSites) {
    throw CapacityError("SuperOperator: materialization is limited to N <= " +
                        std::to_string(kMaxSuperoperatorSites));
  }
  return superoperator_matrix(dim_, action_);
}

ComplexMatrix ConstraintOperators::theta_matrix(int site) const {
  if (site < 1 || site > static_cast<int>(theta.size())) throw IndexError("theta_matrix: site out of range");
  return diagonal_matrix(theta[static_cast<std::size_t>(site - 1)]);
}

ComplexMatrix ConstraintOperators::lambda_matrix(int site) const {
  if (site < 1 || site > static_cast<int>(lambda.size())) throw IndexError("lambda_matrix: site out of range");
  return diagonal_matrix(lambda[static_cast<std::size_t>(site - 1)]);
}

ConstraintOperators constraint_operators(const SpinChainModel& model) {
  const int n = model.n_sites();
  const Index dim = model.dim();
  const double quarter_gamma2 = 0.25 * model.gamma() * model.gamma();
  ConstraintOperators ops;
  for (int k = 1; k <= n; ++k) {
    RealVector theta(dim);
    RealVector lambda(dim);
    for (Index i = 0; i < dim; ++i) {
      double value = model.delta();
      for (int m = 1; m <= n; ++m) {
        if (m != k && ((i >> (m - 1)) & 1) != 0) value += model.interaction(k, m);
      }
      theta[i] = value;
      lambda[i] = 1.0 / (quarter_gamma2 + value * value);
    }
    ops.theta.push_back(std::move(theta));
    ops.lambda.push_back(std::move(lambda));
  }
  return ops;
}

ClassicalRateMatrix::ClassicalRateMatrix(RealMatrix rates) : rates_(std::move(rates)) {
  if (rates_.rows() != rates_.cols() || sites_for_dimension(rates_.rows()) < 0) {
    throw ShapeError("ClassicalRateMatrix: must be 2^N x 2^N");
  }
  const Index dim = rates_.rows();
  const double scale = std::max(1.0, max_abs(rates_));
  for (Index p = 0; p < dim; ++p) {
    double column = 0.0;
    for (Index q = 0; q < dim; ++q) {
      const double w = rates_(q, p);
      if (!std::isfinite(w)) throw ValidationError("ClassicalRateMatrix: non-finite rate");
      column += w;
      if (q == p) continue;
      if (w < 0.0) throw ValidationError("ClassicalRateMatrix: negative transition rate");
      if (w != 0.0 && std::popcount(static_cast<std::uint64_t>(p ^ q)) != 1) {
        throw ValidationError("ClassicalRateMatrix: rate between configurations that differ in more than one site");
      }
    }
    if (std::abs(column) > 1e-12 * scale) throw ValidationError("ClassicalRateMatrix: column does not sum to zero");
  }
}

RealMatrix ClassicalRateMatrix::propagator(double t) const {
  if (!std::isfinite(t)) throw DomainError("ClassicalRateMatrix::propagator: non-finite time");
  return expm(RealMatrix(t * rates_));
}

ComplexMatrix k_hamiltonian(const SpinChainModel& model, const PulseProfile& pulse, double s, int site) {
  check_site(model, site);
  const double g = pulse.g(s);
  const ConstraintOperators ops = constraint_operators(model);
  const auto& theta = ops.theta[static_cast<std::size_t>(site - 1)];
  const auto& lambda = ops.lambda[static_cast<std::size_t>(site - 1)];
  const RealVector y_coeff = g * lambda.cwiseProduct(theta);
  const RealVector x_coeff = (g * 0.5 * model.gamma()) * lambda;
  // The diagonal factors commute with the site-k Paulis, so left
  // multiplication already gives a Hermitian result.
  return y_coeff.cast<Complex>().asDiagonal() * pauli(model.n_sites(), site, Axis::y) +
         x_coeff.cast<Complex>().asDiagonal() * pauli(model.n_sites(), site, Axis::x);
}

SuperOperator w_superop(const SpinChainModel& model, const PulseProfile& pulse, double s, int site) {
  check_site(model, site);
  const double coefficient = model.gamma() * pulse.g2_integral(s);
  const ConstraintOperators ops = constraint_operators(model);
  const RealVector& lambda = ops.lambda[static_cast<std::size_t>(site - 1)];
  const ComplexMatrix lam = diagonal_matrix(lambda);
  const ComplexMatrix root = diagonal_matrix(lambda.cwiseSqrt());
  const ComplexMatrix jump = root * pauli(model.n_sites(), site, Axis::x);
  return SuperOperator(model.dim(), [coefficient, lam, jump](const ComplexMatrix& rho) -> ComplexMatrix {
    return coefficient * (jump * rho * jump.adjoint() - 0.5 * anticommutator(lam, rho));
  });
}

SuperOperator build_A(const SpinChainModel& model, const PulseProfile& pulse, double s) {
  const int n = model.n_sites();
  const Index dim = model.dim();
  auto data = std::make_shared<GeneratorData>();
  data->k_total = ComplexMatrix::Zero(dim, dim);
  const double g = pulse.g(s);
  const double coefficient = model.gamma() * pulse.g2_integral(s);
  const ConstraintOperators ops = constraint_operators(model);
  for (int k = 1; k <= n; ++k) {
    const auto idx = static_cast<std::size_t>(k - 1);
    if (g != 0.0) {
      const RealVector y_coeff = g * ops.lambda[idx].cwiseProduct(ops.theta[idx]);
      const RealVector x_coeff = (g * 0.5 * model.gamma()) * ops.lambda[idx];
      data->k_total += y_coeff.cast<Complex>().asDiagonal() * pauli(n, k, Axis::y) +
                       x_coeff.cast<Complex>().asDiagonal() * pauli(n, k, Axis::x);
    }
    data->rate.push_back(coefficient * ops.lambda[idx]);
    data->sqrt_rate.push_back(data->rate.back().cwiseSqrt());
  }
  const bool has_k = g != 0.0;
  const bool has_w = coefficient != 0.0;

  return SuperOperator(dim, [data, n, dim, has_k, has_w](const ComplexMatrix& rho) -> ComplexMatrix {
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    if (has_k) {
      out.noalias() = data->k_total * rho;
      out.noalias() -= rho * data->k_total;
      out *= -kI;
    }
    if (has_w) {
      for (int k = 0; k < n; ++k) {
        const Index bit = Index{1} << k;
        const RealVector& rate = data->rate[static_cast<std::size_t>(k)];
        const RealVector& root = data->sqrt_rate[static_cast<std::size_t>(k)];
        for (Index i = 0; i < dim; ++i) {
          for (Index j = 0; j < dim; ++j) {
            // sigma_k^x rho sigma_k^x flips bit k of both indices.
            out(i, j) += root[i] * root[j] * rho(i ^ bit, j ^ bit) - 0.5 * (rate[i] + rate[j]) * rho(i, j);
          }
        }
      }
    }
    return out;
  });
}

double f_pq(const SpinChainModel& model, const PulseProfile& pulse, double s, const ClassicalConfig& p,
            const ClassicalConfig& q) {
  if (p == q) return 0.0;
  const EigenValue lambda = eigenvalue(model, {p, q});
  const ComplexMatrix pp = eigenmatrix(pulse, s, {p, p});
  const ComplexMatrix dq = derivative_P(pulse, s, {q, q});
  const Complex trace = (pp * dq * dq * pp).trace();
  return -2.0 * lambda.r / std::norm(lambda.value()) * trace.real();
}

double f_pq_integral(const SpinChainModel& model, const PulseProfile& pulse, double s, const ClassicalConfig& p,
                     const ClassicalConfig& q) {
  // |sum_k <p|sigma_k^x|q>|^2 is 1 for a single flip and 0 otherwise.
  if (hamming_distance(p, q) != 1) return 0.0;
  const EigenValue lambda = eigenvalue(model, {p, q});
  return -2.0 * lambda.r / std::norm(lambda.value()) * pulse.g2_integral(s);
}

DensityMatrix first_order_direct(const SpinChainModel& model, const PulseProfile& pulse, double s,
                                 const ClassicalConfig& p) {
  if (p.size() != model.n_sites()) throw ShapeError("first_order_direct: configuration length mismatch");
  const double inv_t = 1.0 / pulse.duration();
  const ComplexMatrix pp = eigenmatrix(pulse, s, {p, p});
  const ComplexMatrix dp = derivative_P(pulse, s, {p, p});
  ComplexMatrix rho = pp;
  for (Index index = 0; index < model.dim(); ++index) {
    const ClassicalConfig q = ClassicalConfig::from_index(index, model.n_sites());
    if (q == p) continue;
    const ComplexMatrix pq = eigenmatrix(pulse, s, {q, q});
    const Complex lambda_qp = eigenvalue(model, {q, p}).value();
    const Complex lambda_pq = eigenvalue(model, {p, q}).value();
    rho += inv_t * ((pq * dp) / lambda_qp + (dp * pq) / lambda_pq);
    rho -= inv_t * f_pq_integral(model, pulse, s, p, q) * (pp - pq);
  }
  return to_density(rho);
}

DensityMatrix apply_first_order_map(const SpinChainModel& model, const PulseProfile& pulse, double s,
                                    const DensityMatrix& rho0, MapMode mode, ExpMethod method) {
  check_diagonal_input(model, rho0, "apply_first_order_map");
  const double inv_t = 1.0 / pulse.duration();
  const SuperOperator a = build_A(model, pulse, s);
  if (mode == MapMode::linear) return to_density(rho0.matrix() + inv_t * a.apply(rho0.matrix()));

  if (method == ExpMethod::automatic) {
    method = model.n_sites() <= kMaterializeLimit ? ExpMethod::materialized : ExpMethod::integrated;
  }
  if (method == ExpMethod::materialized) {
    const ComplexMatrix propagator = expm(ComplexMatrix(inv_t * a.materialize()));
    return to_density(unvec(propagator * vec(rho0.matrix()), model.dim()));
  }
  // d rho/du = A(s)[rho] / T over u in [0, 1].
  IntegratorOptions options;
  options.rtol = 1e-10;
  options.atol = 1e-12;
  DormandPrince integrator([&a, inv_t](double, const ComplexMatrix& y, ComplexMatrix& dy) { dy = inv_t * a.apply(y); },
                           options);
  ComplexMatrix y = rho0.matrix();
  integrator.advance(0.0, 1.0, y);
  return to_density(y);
}

ClassicalRateMatrix classical_rate_matrix(const SpinChainModel& model, const PulseProfile& pulse) {
  const Index dim = model.dim();
  const double coefficient = model.gamma() * pulse.g2_integral(1.0);
  const ConstraintOperators ops = constraint_operators(model);
  RealMatrix w = RealMatrix::Zero(dim, dim);
  for (Index p = 0; p < dim; ++p) {
    for (int k = 0; k < model.n_sites(); ++k) {
      const Index q = p ^ (Index{1} << k);
      const double rate = coefficient * ops.lambda[static_cast<std::size_t>(k)][p];
      w(q, p) += rate;
      w(p, p) -= rate;
    }
  }
  return ClassicalRateMatrix(std::move(w));
}

DensityMatrix multi_pulse_map(const SpinChainModel& model, const PulseProfile& pulse, const DensityMatrix& rho0,
                              int n_pulses) {
  check_diagonal_input(model, rho0, "multi_pulse_map");
  if (n_pulses < 0) throw ValidationError("multi_pulse_map: n_pulses must be nonnegative");
  if (n_pulses == 0) return rho0;
  const RealVector p0 = rho0.matrix().diagonal().real();
  const RealMatrix propagator = classical_rate_matrix(model, pulse).propagator(n_pulses / pulse.duration());
  return from_probabilities(propagator * p0);
}

DensityMatrix multi_pulse_map_superoperator(const SpinChainModel& model, const PulseProfile& pulse,
                                            const DensityMatrix& rho0, int n_pulses) {
  check_diagonal_input(model, rho0, "multi_pulse_map_superoperator");
  if (n_pulses < 0) throw ValidationError("multi_pulse_map_superoperator: n_pulses must be nonnegative");
  if (n_pulses == 0) return rho0;
  const ComplexMatrix a1 = build_A(model, pulse, 1.0).materialize();
  const ComplexMatrix propagator = expm(ComplexMatrix((n_pulses / pulse.duration()) * a1));
  return to_density(unvec(propagator * vec(rho0.matrix()), model.dim()));
}

DensityMatrix fractional_pulse_state(const SpinChainModel& model, const PulseProfile& pulse,
                                     const DensityMatrix& rho0, int n_pulses, double s, ExpMethod method) {
  if (!(s > 0.0 && s < 1.0)) throw DomainError("fractional_pulse_state: s must lie strictly inside (0, 1)");
  const DensityMatrix after_pulses = multi_pulse_map(model, pulse, rho0, n_pulses);
  return apply_first_order_map(model, pulse, s, after_pulses, MapMode::exponential, method);
}

}  // namespace adiaspin
