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

// Independent reference implementations used only by the tests. None of them
// calls into the library code path it checks: the Liouvillian is assembled
// entry by entry, exponentials come from a plain Taylor series, integrals
// from composite Simpson, and derivatives from central differences.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;  // column-major on purpose
using RealMatrix = Eigen::MatrixXd;

inline const Complex kI{0.0, 1.0};

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// sum_k m^k / k!, summed until the term drops below 1e-18 relative.
inline Matrix taylor_expm(const Matrix& m) {
  Matrix result = Matrix::Identity(m.rows(), m.cols());
  Matrix term = result;
  for (int k = 1; k < 400; ++k) {
    term = (term * m) / static_cast<double>(k);
    result += term;
    if (max_abs(term) <= 1e-18 * max_abs(result)) break;
  }
  return result;
}

inline RealMatrix taylor_expm(const RealMatrix& m) {
  RealMatrix result = RealMatrix::Identity(m.rows(), m.cols());
  RealMatrix term = result;
  for (int k = 1; k < 400; ++k) {
    term = (term * m) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() <= 1e-18 * result.cwiseAbs().maxCoeff()) break;
  }
  return result;
}

/// Large-norm exponential by repeated squaring of a Taylor series.
template <typename M>
M taylor_expm_squared(const M& m) {
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::pow(2.0, squarings) > 0.5) ++squarings;
  M e = taylor_expm(M(m / std::pow(2.0, squarings)));
  for (int i = 0; i < squarings; ++i) e = (e * e).eval();
  return e;
}

inline int bit(std::uint64_t index, int site) { return static_cast<int>((index >> (site - 1)) & 1U); }

inline int popcount(std::uint64_t x) {
  int c = 0;
  for (; x != 0; x &= x - 1) ++c;
  return c;
}

/// E_p = Delta sum_k p_k + sum_{k<m} V0 |k-m|^-alpha p_k p_m.
inline double classical_energy(std::uint64_t p, int n, double delta, double v0, double alpha) {
  double e = 0.0;
  for (int k = 1; k <= n; ++k) {
    e += delta * bit(p, k);
    for (int m = k + 1; m <= n; ++m) e += v0 * std::pow(static_cast<double>(m - k), -alpha) * bit(p, k) * bit(p, m);
  }
  return e;
}

/// H(Omega) matrix elements written out directly in the classical basis.
inline Matrix hamiltonian(int n, double delta, double v0, double alpha, double omega) {
  const std::uint64_t dim = std::uint64_t{1} << n;
  Matrix h = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::uint64_t i = 0; i < dim; ++i) {
    h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = classical_energy(i, n, delta, v0, alpha);
    for (int k = 1; k <= n; ++k) {
      const std::uint64_t j = i ^ (std::uint64_t{1} << (k - 1));
      h(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) += omega;
    }
  }
  return h;
}

/// Lindblad generator as a dim^2 x dim^2 matrix acting on column-stacked
/// vectors, built entry by entry:
///   (H rho)_ij = sum_l H_il rho_lj,  (rho H)_ij = sum_l rho_il H_lj,
///   dephasing multiplies rho_ij by -(gamma/2) * hamming(i, j).
inline Matrix liouvillian(int n, double delta, double v0, double alpha, double gamma, double omega) {
  const Matrix h = hamiltonian(n, delta, v0, alpha, omega);
  const Eigen::Index d = h.rows();
  const auto at = [d](Eigen::Index i, Eigen::Index j) { return i + j * d; };
  Matrix l = Matrix::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      for (Eigen::Index m = 0; m < d; ++m) {
        l(at(i, j), at(m, j)) += -kI * h(i, m);
        l(at(i, j), at(i, m)) += kI * h(m, j);
      }
      l(at(i, j), at(i, j)) += -0.5 * gamma * popcount(static_cast<std::uint64_t>(i ^ j));
    }
  }
  return l;
}

inline Eigen::VectorXcd vec(const Matrix& m) {
  Eigen::VectorXcd v(m.size());
  for (Eigen::Index j = 0; j < m.cols(); ++j) v.segment(j * m.rows(), m.rows()) = m.col(j);
  return v;
}

inline Matrix unvec(const Eigen::VectorXcd& v, Eigen::Index rows) {
  Matrix m(rows, v.size() / rows);
  for (Eigen::Index j = 0; j < m.cols(); ++j) m.col(j) = v.segment(j * rows, rows);
  return m;
}

/// Composite Simpson rule with `panels` (even) subintervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels = 20000) {
  if (panels % 2 != 0) ++panels;
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
  return sum * h / 3.0;
}

/// Fourth-order central difference of a matrix-valued function.
inline Matrix central_difference(const std::function<Matrix(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
}

/// Second-order central difference (the plain version).
inline Matrix central_difference2(const std::function<Matrix(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline Matrix random_matrix(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal;
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  }
  return m;
}

inline Matrix random_hermitian(std::mt19937_64& rng, Eigen::Index n) {
  const Matrix a = random_matrix(rng, n);
  return 0.5 * (a + a.adjoint());
}

/// Random full-rank density matrix A A^dagger / Tr.
inline Matrix random_density(std::mt19937_64& rng, Eigen::Index n) {
  const Matrix a = random_matrix(rng, n);
  Matrix rho = a * a.adjoint();
  return rho / rho.trace();
}

/// Random pure state |psi><psi|.
inline Matrix random_pure(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal;
  Eigen::VectorXcd psi(n);
  for (Eigen::Index i = 0; i < n; ++i) psi[i] = Complex(normal(rng), normal(rng));
  psi.normalize();
  return psi * psi.adjoint();
}

/// Random probability vector.
inline Eigen::VectorXd random_probabilities(std::mt19937_64& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Eigen::VectorXd p(n);
  for (Eigen::Index i = 0; i < n; ++i) p[i] = uniform(rng);
  return p / p.sum();
}

/// Ordinary least squares slope of ln y against ln x.
inline double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxy += dx * (std::log(ys[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace oracle
