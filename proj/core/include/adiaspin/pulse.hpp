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

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace adiaspin {

/// Shape g : [0,1] -> R of a pulse together with its running integrals.
class PulseShape {
 public:
  virtual ~PulseShape() = default;
  [[nodiscard]] virtual double g(double s) const = 0;
  /// omega(s) = int_0^s g.
  [[nodiscard]] virtual double omega(double s) const = 0;
  /// G2(s) = int_0^s g^2.
  [[nodiscard]] virtual double g2_integral(double s) const = 0;
  [[nodiscard]] virtual std::string describe() const = 0;
};

/// Transverse drive Omega(t) = g(t/T) / T of duration T (units of 1/gamma).
/// Cheap to copy; the shape is shared and immutable.
class PulseProfile {
 public:
  /// g(s) = 4 pi sin^2(pi s), area 2 pi.
  static PulseProfile default_pulse(double duration);
  /// g(s) = 2 A sin^2(pi s) with area A; closed-form integrals.
  static PulseProfile sine_squared(double area, double duration);
  /// Piecewise-linear tent with peak height `peak` at s = 1/2 (area peak/2).
  static PulseProfile triangle(double peak, double duration);
  /// Arbitrary shape; omega and G2 come from adaptive quadrature cached on a
  /// dense grid. Requires |g(0)|, |g(1)| <= 1e-8.
  static PulseProfile custom(std::function<double(double)> g, double duration,
                             std::string name = "custom");
  /// Piecewise-linear interpolation of samples on a uniform grid over [0,1].
  static PulseProfile from_samples(std::vector<double> samples, double duration);

  [[nodiscard]] PulseProfile with_duration(double duration) const;

  [[nodiscard]] double g(double s) const;
  [[nodiscard]] double omega(double s) const;
  [[nodiscard]] double g2_integral(double s) const;
  [[nodiscard]] double duration() const noexcept { return duration_; }
  /// Omega(t) for t in [0, T].
  [[nodiscard]] double amplitude(double t) const { return g(t / duration_) / duration_; }
  [[nodiscard]] double area() const { return omega(1.0); }
  [[nodiscard]] std::string describe() const { return shape_->describe(); }
  [[nodiscard]] const std::shared_ptr<const PulseShape>& shape() const noexcept { return shape_; }

 private:
  PulseProfile(std::shared_ptr<const PulseShape> shape, double duration);

  std::shared_ptr<const PulseShape> shape_;
  double duration_;
};

/// Adaptive Gauss-Kronrod integral of f over [a, b]. Accepts an error estimate
/// below abs_tol or below 1e-11 of the integral of |f|.
[[nodiscard]] double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                        double abs_tol = 1e-12);

}  // namespace adiaspin
