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

#pragma once

#include <cstddef>
#include <functional>

#include "adiaspin/linalg.hpp"

namespace adiaspin {

struct IntegratorOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  /// 0 selects the starting step automatically.
  double initial_step = 0.0;
  /// Attempted steps (accepted + rejected) allowed per advance() call.
  std::size_t max_steps = 50'000'000;
};

struct IntegrationStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t rhs_evaluations = 0;
};

/// dy/dt = f(t, y) written into `dydt` (already sized like y).
using MatrixRhs = std::function<void(double t, const ComplexMatrix& y, ComplexMatrix& dydt)>;

/// Dormand-Prince 5(4) with FSAL and elementwise mixed error control
///   max_ij |err_ij| / (atol + rtol * max(|y_ij|, |y_new_ij|)) <= 1.
/// The step size carries over between successive advance() calls, so a
/// trajectory sampled on a grid costs about the same as one long call.
class DormandPrince {
 public:
  explicit DormandPrince(MatrixRhs rhs, IntegratorOptions options = {});

  /// Integrates y in place from t0 to t1 >= t0. Throws ConvergenceError when
  /// the step budget is exhausted or the step size underflows.
  void advance(double t0, double t1, ComplexMatrix& y);

  [[nodiscard]] const IntegrationStats& stats() const noexcept { return stats_; }
  [[nodiscard]] const IntegratorOptions& options() const noexcept { return options_; }

 private:
  double initial_step(double t0, double t1, const ComplexMatrix& y);
  double error_norm(const ComplexMatrix& y, const ComplexMatrix& y_new) const;

  MatrixRhs rhs_;
  IntegratorOptions options_;
  IntegrationStats stats_;
  double step_ = 0.0;
  bool fsal_valid_ = false;
  double fsal_time_ = 0.0;
  ComplexMatrix last_y_;
  ComplexMatrix k1_, k2_, k3_, k4_, k5_, k6_, k7_, stage_, y_new_, err_;
};

}  // namespace adiaspin
