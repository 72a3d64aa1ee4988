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

#include "adiaspin/model.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "adiaspin/errors.hpp"

namespace adiaspin {
namespace {

void check_sites(int n_sites) {
  if (n_sites < 1) throw ValidationError("n_sites must be at least 1");
  if (n_sites > kMaxMatrixSites) {
    throw CapacityError("n_sites " + std::to_string(n_sites) + " exceeds the matrix-form cap of " +
                        std::to_string(kMaxMatrixSites));
  }
}

void check_site(int n_sites, int site) {
  check_sites(n_sites);
  if (site < 1 || site > n_sites) {
    throw IndexError("site " + std::to_string(site) + " outside [1, " + std::to_string(n_sites) + "]");
  }
}

// I_{2^(N-site)} (x) op (x) I_{2^(site-1)}.
ComplexMatrix embed(const ComplexMatrix& op, int n_sites, int site) {
  const Index left = Index{1} << (n_sites - site);
  const Index right = Index{1} << (site - 1);
  return kron(kron(identity(left), op), identity(right));
}

}  // namespace

ComplexMatrix single_site_pauli(Axis axis) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  switch (axis) {
    case Axis::x:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case Axis::y:
      m(0, 1) = kI;
      m(1, 0) = -kI;
      break;
    case Axis::z:
      m(0, 0) = -1.0;
      m(1, 1) = 1.0;
      break;
  }
  return m;
}

ComplexMatrix pauli(int n_sites, int site, Axis axis) {
  check_site(n_sites, site);
  return embed(single_site_pauli(axis), n_sites, site);
}

ComplexMatrix number_op(int n_sites, int site) {
  check_site(n_sites, site);
  ComplexMatrix n = ComplexMatrix::Zero(2, 2);
  n(1, 1) = 1.0;
  return embed(n, n_sites, site);
}

// --- ClassicalConfig ---------------------------------------------------------

ClassicalConfig::ClassicalConfig(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw ValidationError("ClassicalConfig: entries must be 0 or 1");
  }
}

ClassicalConfig ClassicalConfig::from_index(Index index, int n_sites) {
  check_sites(n_sites);
  if (index < 0 || index >= (Index{1} << n_sites)) throw IndexError("ClassicalConfig: index out of range");
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n_sites));
  for (int k = 0; k < n_sites; ++k) bits[k] = static_cast<std::uint8_t>((index >> k) & 1);
  return ClassicalConfig(std::move(bits));
}

ClassicalConfig ClassicalConfig::parse(const std::string& text) {
  std::vector<std::uint8_t> bits;
  for (char c : text) {
    if (c != '0' && c != '1') throw ValidationError("configuration '" + text + "' must contain only 0 and 1");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  if (bits.empty()) throw ValidationError("empty configuration");
  return ClassicalConfig(std::move(bits));
}

int ClassicalConfig::bit(int site) const {
  if (site < 1 || site > size()) throw IndexError("ClassicalConfig::bit: site out of range");
  return bits_[static_cast<std::size_t>(site - 1)];
}

Index ClassicalConfig::index() const noexcept {
  Index idx = 0;
  for (std::size_t k = 0; k < bits_.size(); ++k) idx |= static_cast<Index>(bits_[k]) << k;
  return idx;
}

int ClassicalConfig::excitations() const noexcept {
  return std::accumulate(bits_.begin(), bits_.end(), 0);
}

ClassicalConfig ClassicalConfig::flipped(int site) const {
  if (site < 1 || site > size()) throw IndexError("ClassicalConfig::flipped: site out of range");
  auto bits = bits_;
  bits[static_cast<std::size_t>(site - 1)] ^= 1U;
  return ClassicalConfig(std::move(bits));
}

std::string ClassicalConfig::to_string() const {
  std::string s;
  for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

int hamming_distance(const ClassicalConfig& a, const ClassicalConfig& b) {
  if (a.size() != b.size()) throw ShapeError("hamming_distance: configurations differ in length");
  int d = 0;
  for (int k = 1; k <= a.size(); ++k) d += a.bit(k) != b.bit(k) ? 1 : 0;
  return d;
}

// --- ClassicalMixture --------------------------------------------------------

ClassicalMixture::ClassicalMixture(int n_sites, std::vector<std::pair<ClassicalConfig, double>> weights)
    : n_sites_(n_sites) {
  check_sites(n_sites);
  probabilities_ = RealVector::Zero(Index{1} << n_sites);
  double total = 0.0;
  for (const auto& [config, weight] : weights) {
    if (config.size() != n_sites) {
      throw ShapeError("mixture entry '" + config.to_string() + "' does not have " +
                            std::to_string(n_sites) + " sites");
    }
    if (!(weight >= 0.0) || !std::isfinite(weight)) {
      throw ValidationError("mixture weights must be finite and nonnegative");
    }
    probabilities_(config.index()) += weight;
    total += weight;
  }
  if (std::abs(total - 1.0) > kNormTolerance) {
    throw ValidationError("mixture weights sum to " + std::to_string(total) + ", not 1");
  }
}

ClassicalMixture ClassicalMixture::pure(const ClassicalConfig& config) {
  return ClassicalMixture(config.size(), {{config, 1.0}});
}

ClassicalMixture ClassicalMixture::uniform(int n_sites) {
  check_sites(n_sites);
  const Index dim = Index{1} << n_sites;
  std::vector<std::pair<ClassicalConfig, double>> w;
  w.reserve(static_cast<std::size_t>(dim));
  for (Index i = 0; i < dim; ++i) w.emplace_back(ClassicalConfig::from_index(i, n_sites), 1.0 / static_cast<double>(dim));
  return ClassicalMixture(n_sites, std::move(w));
}

// --- SpinChainModel ----------------------------------------------------------

SpinChainModel::SpinChainModel(int n_sites, double delta, double v0, double alpha, double gamma)
    : n_sites_(n_sites), delta_(delta), v0_(v0), alpha_(alpha), gamma_(gamma) {
  check_sites(n_sites);
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ValidationError("gamma must be positive");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("alpha must be positive");
  if (!std::isfinite(delta) || !std::isfinite(v0)) throw ValidationError("delta and v0 must be finite");
  interactions_ = RealMatrix::Zero(n_sites, n_sites);
  for (int k = 0; k < n_sites; ++k) {
    for (int m = 0; m < n_sites; ++m) {
      if (k != m) interactions_(k, m) = v0 * std::pow(static_cast<double>(std::abs(k - m)), -alpha);
    }
  }
}

double SpinChainModel::interaction(int k, int m) const {
  check_site(n_sites_, k);
  check_site(n_sites_, m);
  return interactions_(k - 1, m - 1);
}

double SpinChainModel::classical_energy(const ClassicalConfig& p) const {
  if (p.size() != n_sites_) throw ShapeError("classical_energy: configuration length mismatch");
  double e = 0.0;
  for (int k = 1; k <= n_sites_; ++k) {
    if (!p.bit(k)) continue;
    e += delta_;
    for (int m = 1; m <= n_sites_; ++m) {
      if (p.bit(m)) e += 0.5 * interactions_(k - 1, m - 1);
    }
  }
  return e;
}

HamiltonianParts hamiltonian_parts(const SpinChainModel& model) {
  const int n = model.n_sites();
  const Index dim = model.dim();
  std::vector<ComplexMatrix> occupation;
  occupation.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) occupation.push_back(number_op(n, k));

  HamiltonianParts parts{ComplexMatrix::Zero(dim, dim), ComplexMatrix::Zero(dim, dim)};
  for (int k = 1; k <= n; ++k) {
    parts.static_part += model.delta() * occupation[k - 1];
    parts.drive += pauli(n, k, Axis::x);
    for (int m = 1; m <= n; ++m) {
      const double v = model.interaction(k, m);
      if (v != 0.0) parts.static_part += 0.5 * v * occupation[k - 1] * occupation[m - 1];
    }
  }
  return parts;
}

ComplexMatrix hamiltonian(const SpinChainModel& model, double omega_value) {
  auto parts = hamiltonian_parts(model);
  return parts.static_part + omega_value * parts.drive;
}

std::vector<ComplexMatrix> jump_ops(const SpinChainModel& model) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<std::size_t>(model.n_sites()));
  const double amplitude = std::sqrt(model.gamma());
  for (int k = 1; k <= model.n_sites(); ++k) ops.push_back(amplitude * number_op(model.n_sites(), k));
  return ops;
}

DensityMatrix mixture_to_density(const ClassicalMixture& mix) {
  const RealVector& p = mix.probabilities();
  if (std::abs(p.sum() - 1.0) > ClassicalMixture::kNormTolerance || (p.array() < 0.0).any()) {
    throw ValidationError("mixture_to_density: mixture is not normalized");
  }
  ComplexMatrix m = ComplexMatrix::Zero(p.size(), p.size());
  for (Index i = 0; i < p.size(); ++i) m(i, i) = p(i);
  return DensityMatrix(std::move(m));
}

}  // namespace adiaspin
