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

#include "adiaspin/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "adiaspin/errors.hpp"

namespace adiaspin {

ComplexMatrix identity(Index n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Index rows = a.rows() * b.rows();
  const Index cols = a.cols() * b.cols();
  if (rows > kMaxDimension || cols > kMaxDimension) {
    throw CapacityError("kron: result " + std::to_string(rows) + "x" + std::to_string(cols) +
                        " exceeds the dense cap of " + std::to_string(kMaxDimension));
  }
  ComplexMatrix out(rows, cols);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double max_abs(const RealMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = max_abs(m);
  if (scale == 0.0) return true;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b + b * a;
}

HermitianEigen hermitian_eigs(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("hermitian_eigs: matrix is not square");
  if (!is_hermitian(m, 1e-10)) throw DomainError("hermitian_eigs: matrix is not Hermitian");
  // Symmetrize so round-off asymmetry does not leak into the solver.
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw DomainError("hermitian_eigs: solver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("hermitian_eigenvalues: matrix is not square");
  if (!is_hermitian(m, 1e-10)) throw DomainError("hermitian_eigenvalues: matrix is not Hermitian");
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw DomainError("hermitian_eigenvalues: solver did not converge");
  return solver.eigenvalues();
}

ComplexVector vec(const ComplexMatrix& m) {
  ComplexVector v(m.size());
  Index n = 0;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) v(n++) = m(i, j);
  }
  return v;
}

ComplexMatrix unvec(const ComplexVector& v, Index rows) {
  if (rows <= 0 || v.size() % rows != 0) throw ShapeError("unvec: length is not a multiple of rows");
  const Index cols = v.size() / rows;
  ComplexMatrix m(rows, cols);
  Index n = 0;
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = v(n++);
  }
  return m;
}

ComplexMatrix sandwich_superop(const ComplexMatrix& a, const ComplexMatrix& b) {
  return kron(b.transpose(), a);
}

ComplexMatrix superoperator_matrix(Index dim, const std::function<ComplexMatrix(const ComplexMatrix&)>& action) {
  if (dim < 1 || dim * dim > kMaxDimension) {
    throw CapacityError("superoperator_matrix: dimension " + std::to_string(dim) + " squared exceeds the cap");
  }
  const Index d2 = dim * dim;
  ComplexMatrix out(d2, d2);
  ComplexMatrix unit = ComplexMatrix::Zero(dim, dim);
  for (Index col = 0; col < d2; ++col) {
    // Column-stacked position col is the entry (col % dim, col / dim).
    const Index i = col % dim;
    const Index j = col / dim;
    unit(i, j) = 1.0;
    const ComplexMatrix image = action(unit);
    if (image.rows() != dim || image.cols() != dim) throw ShapeError("superoperator_matrix: image has wrong shape");
    out.col(col) = vec(image);
    unit(i, j) = 0.0;
  }
  return out;
}

int sites_for_dimension(Index dim) noexcept {
  if (dim < 1) return -1;
  int n = 0;
  while ((Index{1} << n) < dim) ++n;
  return (Index{1} << n) == dim ? n : -1;
}

// --- DensityMatrix -----------------------------------------------------------

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw ShapeError("DensityMatrix: matrix is not square");
  n_sites_ = sites_for_dimension(m_.rows());
  if (n_sites_ < 0) throw ShapeError("DensityMatrix: dimension is not a power of two");
  if (m_.rows() > kMaxDimension) throw CapacityError("DensityMatrix: dimension exceeds the dense cap");
  if (!is_hermitian(m_, kHermitianTolerance)) throw ValidationError("DensityMatrix: matrix is not Hermitian");
  const Complex tr = m_.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    throw ValidationError("DensityMatrix: trace " + std::to_string(tr.real()) + " differs from 1");
  }
}

DensityMatrix DensityMatrix::basis_state(int n_sites, Index index) {
  if (n_sites < 1 || n_sites > kMaxMatrixSites) throw IndexError("basis_state: n_sites out of range");
  const Index dim = Index{1} << n_sites;
  if (index < 0 || index >= dim) throw IndexError("basis_state: index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(index, index) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int n_sites) {
  if (n_sites < 1 || n_sites > kMaxMatrixSites) throw IndexError("maximally_mixed: n_sites out of range");
  const Index dim = Index{1} << n_sites;
  return DensityMatrix(identity(dim) / static_cast<double>(dim));
}

double DensityMatrix::min_eigenvalue() const { return hermitian_eigenvalues(m_).minCoeff(); }

bool DensityMatrix::is_positive(double tol) const { return min_eigenvalue() >= -tol; }

bool DensityMatrix::is_diagonal(double tol) const {
  for (Index i = 0; i < m_.rows(); ++i) {
    for (Index j = 0; j < m_.cols(); ++j) {
      if (i != j && std::abs(m_(i, j)) > tol) return false;
    }
  }
  return true;
}

DensityMatrix partial_trace(const DensityMatrix& rho, int keep_site, int n_sites) {
  if (n_sites < 1 || rho.dim() != (Index{1} << n_sites)) {
    throw ShapeError("partial_trace: state dimension does not match n_sites");
  }
  if (keep_site < 1 || keep_site > n_sites) throw IndexError("partial_trace: keep_site out of range");
  const Index bit = Index{1} << (keep_site - 1);
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(2, 2);
  // Sum over every configuration of the traced-out sites (indices with the
  // kept bit cleared), pairing rows and columns that agree on them.
  for (Index env = 0; env < rho.dim(); ++env) {
    if (env & bit) continue;
    for (Index a = 0; a < 2; ++a) {
      for (Index b = 0; b < 2; ++b) {
        out(a, b) += m(env | (a ? bit : 0), env | (b ? bit : 0));
      }
    }
  }
  return DensityMatrix(std::move(out));
}

}  // namespace adiaspin
