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

// Matrix exponential by scaling and squaring with a diagonal Pade
// approximant, following Higham, "The scaling and squaring method for the
// matrix exponential revisited" (SIAM J. Matrix Anal. Appl. 26, 2005).
// The degree m in {3, 5, 7, 9, 13} is the smallest whose backward-error
// bound theta_m covers ||A||_1; otherwise A is scaled by 2^-s so that
// ||A / 2^s||_1 <= theta_13 and the result is squared s times.

#include <array>
#include <algorithm>
#include <cmath>
#include <cstddef>

#include "adiaspin/errors.hpp"
#include "adiaspin/linalg.hpp"

namespace adiaspin {
namespace {

constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                          25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9 = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                                           30270240.0,    2162160.0,    110880.0,     3960.0,
                                           90.0,          1.0};
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

// Backward-error bounds for unit roundoff 2^-53.
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

template <typename Matrix>
double one_norm(const Matrix& a) {
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

// U and V of the [m/m] approximant r_m(A) = (V - U)^-1 (V + U) for m <= 9.
template <typename Matrix, std::size_t K>
void low_degree_uv(const Matrix& a, const std::array<double, K>& b, Matrix& u, Matrix& v) {
  const Index n = a.rows();
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  Matrix power = ident;  // A^(2j)
  Matrix odd = b[1] * ident;
  Matrix even = b[0] * ident;
  for (std::size_t j = 1; 2 * j < K; ++j) {
    power = power * a2;
    even += b[2 * j] * power;
    if (2 * j + 1 < K) odd += b[2 * j + 1] * power;
  }
  u = a * odd;
  v = even;
}

template <typename Matrix>
void degree13_uv(const Matrix& a, Matrix& u, Matrix& v) {
  const auto& b = kPade13;
  const Index n = a.rows();
  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix inner_u = b[13] * a6 + b[11] * a4 + b[9] * a2;
  u = a * (a6 * inner_u + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
  const Matrix inner_v = b[12] * a6 + b[10] * a4 + b[8] * a2;
  v = a6 * inner_v + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
}

template <typename Matrix>
Matrix expm_impl(const Matrix& a) {
  if (a.rows() != a.cols()) throw ShapeError("expm: matrix is not square");
  const Index n = a.rows();
  if (n == 0) return a;

  const double norm = one_norm(a);
  if (!std::isfinite(norm)) throw DomainError("expm: matrix has non-finite entries");

  Matrix u(n, n);
  Matrix v(n, n);
  int squarings = 0;
  if (norm <= kTheta3) {
    low_degree_uv(a, kPade3, u, v);
  } else if (norm <= kTheta5) {
    low_degree_uv(a, kPade5, u, v);
  } else if (norm <= kTheta7) {
    low_degree_uv(a, kPade7, u, v);
  } else if (norm <= kTheta9) {
    low_degree_uv(a, kPade9, u, v);
  } else {
    squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / kTheta13))));
    const Matrix scaled = a / std::ldexp(1.0, squarings);
    degree13_uv(scaled, u, v);
  }

  Matrix result = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

}  // namespace

ComplexMatrix expm(const ComplexMatrix& m) { return expm_impl(m); }

RealMatrix expm(const RealMatrix& m) { return expm_impl(m); }

}  // namespace adiaspin
