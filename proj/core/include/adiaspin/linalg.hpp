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

// Dense complex matrix algebra shared by every other module.
//
// Conventions, fixed here and used everywhere:
//   * matrices are stored row-major;
//   * vectorization is column stacking, vec(A X B) = (B^T (x) A) vec(X);
//   * many-body basis index i = sum_k p_k 2^(k-1), i.e. site 1 is the least
//     significant bit, and operators on site k are I (x) ... (x) O (x) ... (x) I
//     with the factor for site N leftmost.

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace adiaspin {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Largest row/column count any dense object may have. It admits the 4^5
/// superoperator and 2^10 states.
inline constexpr Index kMaxDimension = 1024;

/// Largest chain for which 4^N x 4^N superoperators are materialized.
inline constexpr int kMaxSuperoperatorSites = 5;
/// Largest chain for the matrix-form (2^N x 2^N) code paths.
inline constexpr int kMaxMatrixSites = 10;

[[nodiscard]] ComplexMatrix identity(Index n);

/// Kronecker product; throws CapacityError when a result dimension exceeds
/// kMaxDimension.
[[nodiscard]] ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

[[nodiscard]] double max_abs(const ComplexMatrix& m);
[[nodiscard]] double max_abs(const RealMatrix& m);

/// True when max|M - M^dagger| <= rel_tol * max|M|.
[[nodiscard]] bool is_hermitian(const ComplexMatrix& m, double rel_tol = 1e-12);

[[nodiscard]] ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
[[nodiscard]] ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Scaling-and-squaring Pade approximant of exp(m). Throws ShapeError for
/// non-square input.
[[nodiscard]] ComplexMatrix expm(const ComplexMatrix& m);
[[nodiscard]] RealMatrix expm(const RealMatrix& m);

struct HermitianEigen {
  RealVector values;      ///< ascending
  ComplexMatrix vectors;  ///< column i pairs with values[i]
};

/// Eigendecomposition of a Hermitian matrix. Throws DomainError when
/// max|M - M^dagger| exceeds 1e-10 * max|M|.
[[nodiscard]] HermitianEigen hermitian_eigs(const ComplexMatrix& m);
[[nodiscard]] RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// Column-stacking vectorization.
[[nodiscard]] ComplexVector vec(const ComplexMatrix& m);
[[nodiscard]] ComplexMatrix unvec(const ComplexVector& v, Index rows);

/// Superoperator matrix of X -> A X B under column stacking, i.e. B^T (x) A.
[[nodiscard]] ComplexMatrix sandwich_superop(const ComplexMatrix& a, const ComplexMatrix& b);

/// Column-stacked d^2 x d^2 matrix of a linear map on d x d matrices, built
/// column by column from the images of the unit matrices E_ij.
[[nodiscard]] ComplexMatrix superoperator_matrix(Index dim,
                                                 const std::function<ComplexMatrix(const ComplexMatrix&)>& action);

/// Number of sites n with 2^n == dim, or -1 if dim is not a power of two.
[[nodiscard]] int sites_for_dimension(Index dim) noexcept;

/// A validated density matrix: square, dimension 2^N, Hermitian within
/// 1e-10 relative to its largest entry, and |Tr rho - 1| <= 1e-8.
/// Positivity is not enforced at construction (first-order adiabatic states
/// may violate it slightly); query it with min_eigenvalue()/is_positive().
class DensityMatrix {
 public:
  static constexpr double kHermitianTolerance = 1e-10;
  static constexpr double kTraceTolerance = 1e-8;
  static constexpr double kPositivityTolerance = 1e-8;

  explicit DensityMatrix(ComplexMatrix m);

  /// Basis projector |index><index| on n_sites spins.
  static DensityMatrix basis_state(int n_sites, Index index);
  /// I / 2^n_sites.
  static DensityMatrix maximally_mixed(int n_sites);

  [[nodiscard]] const ComplexMatrix& matrix() const noexcept { return m_; }
  [[nodiscard]] Index dim() const noexcept { return m_.rows(); }
  [[nodiscard]] int n_sites() const noexcept { return n_sites_; }
  [[nodiscard]] Complex trace() const { return m_.trace(); }
  [[nodiscard]] double min_eigenvalue() const;
  [[nodiscard]] bool is_positive(double tol = kPositivityTolerance) const;
  [[nodiscard]] bool is_diagonal(double tol = 1e-14) const;

 private:
  ComplexMatrix m_;
  int n_sites_ = 0;
};

/// Reduced state of one site (1-based, site 1 = least significant bit) of an
/// n_sites chain. Throws ShapeError on dimension mismatch and IndexError for
/// keep_site outside [1, n_sites].
[[nodiscard]] DensityMatrix partial_trace(const DensityMatrix& rho, int keep_site, int n_sites);

}  // namespace adiaspin
