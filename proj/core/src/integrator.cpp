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

#include "adiaspin/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "adiaspin/errors.hpp"

namespace adiaspin {
namespace {

// Dormand & Prince (1980) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                 a76 = 11.0 / 84.0;
// Fifth- minus fourth-order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;

}  // namespace

DormandPrince::DormandPrince(MatrixRhs rhs, IntegratorOptions options)
    : rhs_(std::move(rhs)), options_(options) {
  if (!rhs_) throw ValidationError("DormandPrince: missing right-hand side");
  if (!(options_.rtol > 0.0) || !(options_.atol > 0.0)) {
    throw ValidationError("DormandPrince: tolerances must be positive");
  }
}

double DormandPrince::error_norm(const ComplexMatrix& y, const ComplexMatrix& y_new) const {
  double worst = 0.0;
  for (Index i = 0; i < y.size(); ++i) {
    const double scale =
        options_.atol + options_.rtol * std::max(std::abs(y.data()[i]), std::abs(y_new.data()[i]));
    worst = std::max(worst, std::abs(err_.data()[i]) / scale);
  }
  return worst;
}

// Hairer, Norsett & Wanner, Solving ODEs I, section II.4.
double DormandPrince::initial_step(double t0, double t1, const ComplexMatrix& y) {
  const double span = t1 - t0;
  if (options_.initial_step > 0.0) return std::min(options_.initial_step, span);
  const auto scaled = [this, &y](const ComplexMatrix& v) {
    double worst = 0.0;
    for (Index i = 0; i < v.size(); ++i) {
      worst = std::max(worst, std::abs(v.data()[i]) / (options_.atol + options_.rtol * std::abs(y.data()[i])));
    }
    return worst;
  };
  rhs_(t0, y, k1_);
  ++stats_.rhs_evaluations;
  const double d0 = scaled(y);
  const double d1 = scaled(k1_);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1;
  h0 = std::min(h0, span);
  stage_ = y + h0 * k1_;
  rhs_(t0 + h0, stage_, k2_);
  ++stats_.rhs_evaluations;
  const double d2 = scaled(k2_ - k1_) / h0;
  const double h1 = std::max(d1, d2) <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                                 : std::pow(0.01 / std::max(d1, d2), 1.0 / 5.0);
  fsal_valid_ = true;
  fsal_time_ = t0;
  return std::min({100.0 * h0, h1, span});
}

void DormandPrince::advance(double t0, double t1, ComplexMatrix& y) {
  if (!(t1 >= t0)) throw ValidationError("DormandPrince::advance: t1 must not precede t0");
  if (t1 == t0) return;

  const auto like = [&y](ComplexMatrix& m) {
    if (m.rows() != y.rows() || m.cols() != y.cols()) m.resize(y.rows(), y.cols());
  };
  for (ComplexMatrix* m : {&k1_, &k2_, &k3_, &k4_, &k5_, &k6_, &k7_, &stage_, &y_new_, &err_}) like(*m);

  // The cached derivative is only reusable if y is untouched since the last call.
  if (fsal_valid_ && (fsal_time_ != t0 || last_y_.size() != y.size() || last_y_ != y)) fsal_valid_ = false;
  if (step_ <= 0.0) step_ = initial_step(t0, t1, y);

  double t = t0;
  double last_error = 0.0;
  bool rejected_last = false;
  std::size_t attempts = 0;
  while (t < t1) {
    if (++attempts > options_.max_steps) {
      throw ConvergenceError("integrator exceeded " + std::to_string(options_.max_steps) +
                                 " steps before reaching t = " + std::to_string(t1),
                             t, last_error);
    }
    double h = std::min(step_, t1 - t);
    const bool clipped = h < step_;
    if (h <= 1e-15 * std::max(1.0, std::abs(t))) {
      throw ConvergenceError("integrator step size underflow at t = " + std::to_string(t), t, last_error);
    }

    if (!fsal_valid_) {
      rhs_(t, y, k1_);
      ++stats_.rhs_evaluations;
    }
    stage_ = y + h * a21 * k1_;
    rhs_(t + c2 * h, stage_, k2_);
    stage_ = y + h * (a31 * k1_ + a32 * k2_);
    rhs_(t + c3 * h, stage_, k3_);
    stage_ = y + h * (a41 * k1_ + a42 * k2_ + a43 * k3_);
    rhs_(t + c4 * h, stage_, k4_);
    stage_ = y + h * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_);
    rhs_(t + c5 * h, stage_, k5_);
    stage_ = y + h * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
    rhs_(t + h, stage_, k6_);
    y_new_ = y + h * (a71 * k1_ + a73 * k3_ + a74 * k4_ + a75 * k5_ + a76 * k6_);
    const double t_new = clipped ? t1 : t + h;
    rhs_(t_new, y_new_, k7_);
    stats_.rhs_evaluations += 6;

    err_ = h * (e1 * k1_ + e3 * k3_ + e4 * k4_ + e5 * k5_ + e6 * k6_ + e7 * k7_);
    const double error = error_norm(y, y_new_);
    last_error = error;
    if (!std::isfinite(error)) {
      throw ConvergenceError("integrator produced a non-finite state at t = " + std::to_string(t), t, error);
    }

    const double factor =
        error == 0.0 ? kMaxFactor : std::clamp(kSafety * std::pow(error, -0.2), kMinFactor, kMaxFactor);
    if (error <= 1.0) {
      ++stats_.accepted;
      t = t_new;
      std::swap(y, y_new_);
      std::swap(k1_, k7_);
      fsal_valid_ = true;
      fsal_time_ = t;
      // A step clipped to land on t1 says nothing about the natural size.
      if (!clipped) step_ = h * (rejected_last ? std::min(1.0, factor) : factor);
      rejected_last = false;
    } else {
      ++stats_.rejected;
      step_ = h * std::min(1.0, factor);
      rejected_last = true;
    }
  }
  last_y_ = y;
}

}  // namespace adiaspin
