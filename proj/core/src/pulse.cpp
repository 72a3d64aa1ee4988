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

#include "adiaspin/pulse.hpp"

#include <cstdio>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "adiaspin/errors.hpp"

namespace adiaspin {
namespace {

using std::numbers::pi;

constexpr double kBoundaryTolerance = 1e-8;
constexpr double kClosedFormCheckTolerance = 1e-10;
constexpr int kGridCells = 1024;

// Accepts s marginally outside [0,1] from floating-point accumulation.
double clamp_unit(double s) {
  constexpr double slack = 1e-12;
  if (!(s >= -slack && s <= 1.0 + slack)) {
    throw DomainError("pulse: normalized time " + std::to_string(s) + " outside [0, 1]");
  }
  return std::clamp(s, 0.0, 1.0);
}

class SineSquaredShape final : public PulseShape {
 public:
  explicit SineSquaredShape(double area) : amplitude_(2.0 * area), area_(area) {}

  double g(double s) const override {
    const double x = std::sin(pi * s);
    return amplitude_ * x * x;
  }
  double omega(double s) const override {
    return amplitude_ * (0.5 * s - std::sin(2.0 * pi * s) / (4.0 * pi));
  }
  double g2_integral(double s) const override {
    return amplitude_ * amplitude_ *
           (3.0 * s / 8.0 - std::sin(2.0 * pi * s) / (4.0 * pi) + std::sin(4.0 * pi * s) / (32.0 * pi));
  }
  std::string describe() const override {
    std::ostringstream os;
    os.precision(17);
    os << "sin2(area=" << area_ << ")";
    return os.str();
  }

 private:
  double amplitude_;
  double area_;
};

// Running integrals tabulated at kGridCells+1 uniform nodes; between nodes the
// partial cell is integrated with 20-point Gauss-Legendre, which keeps omega
// and G2 nondecreasing wherever their integrands are nonnegative.
class QuadratureShape final : public PulseShape {
 public:
  QuadratureShape(std::function<double(double)> g, std::string name, int cells)
      : g_(std::move(g)), name_(std::move(name)), cells_(cells) {
    omega_nodes_.assign(static_cast<std::size_t>(cells_) + 1, 0.0);
    g2_nodes_.assign(static_cast<std::size_t>(cells_) + 1, 0.0);
    const double h = 1.0 / cells_;
    const auto square = [this](double s) {
      const double v = g_(s);
      return v * v;
    };
    for (int i = 0; i < cells_; ++i) {
      const double a = i * h;
      const double b = (i + 1 == cells_) ? 1.0 : (i + 1) * h;
      omega_nodes_[i + 1] = omega_nodes_[i] + integrate_adaptive(g_, a, b, 1e-13);
      g2_nodes_[i + 1] = g2_nodes_[i] + integrate_adaptive(square, a, b, 1e-13);
    }
  }

  double g(double s) const override { return g_(s); }
  double omega(double s) const override { return running(s, omega_nodes_, g_); }
  double g2_integral(double s) const override {
    return running(s, g2_nodes_, [this](double x) {
      const double v = g_(x);
      return v * v;
    });
  }
  std::string describe() const override { return name_; }

 private:
  template <typename F>
  double running(double s, const std::vector<double>& nodes, F&& f) const {
    const double scaled = s * cells_;
    const int cell = std::min(cells_ - 1, static_cast<int>(std::floor(scaled)));
    const double left = static_cast<double>(cell) / cells_;
    if (s <= left) return nodes[static_cast<std::size_t>(cell)];
    return nodes[static_cast<std::size_t>(cell)] +
           boost::math::quadrature::gauss<double, 20>::integrate(f, left, s);
  }

  std::function<double(double)> g_;
  std::string name_;
  int cells_;
  std::vector<double> omega_nodes_;
  std::vector<double> g2_nodes_;
};

void check_duration(double duration) {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw ValidationError("pulse duration T must be positive and finite");
  }
}

void check_boundary(const std::function<double(double)>& g) {
  const double g0 = g(0.0);
  const double g1 = g(1.0);
  if (!(std::abs(g0) <= kBoundaryTolerance) || !(std::abs(g1) <= kBoundaryTolerance)) {
    throw ValidationError("pulse shape must vanish at s = 0 and s = 1 (g(0) = " + std::to_string(g0) +
                          ", g(1) = " + std::to_string(g1) + ")");
  }
}

// The closed forms are checked once per construction against quadrature.
void verify_closed_form(const PulseShape& shape) {
  const auto g = [&shape](double s) { return shape.g(s); };
  const auto g2 = [&shape](double s) {
    const double v = shape.g(s);
    return v * v;
  };
  for (double s : {0.25, 0.5, 0.75, 1.0}) {
    const double omega_q = integrate_adaptive(g, 0.0, s, 1e-13);
    const double g2_q = integrate_adaptive(g2, 0.0, s, 1e-13);
    if (std::abs(omega_q - shape.omega(s)) > kClosedFormCheckTolerance ||
        std::abs(g2_q - shape.g2_integral(s)) > kClosedFormCheckTolerance) {
      throw ValidationError("pulse closed form disagrees with quadrature for " + shape.describe());
    }
  }
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol) {
  if (a == b) return 0.0;
  using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;
  double error = 0.0;
  double l1 = 0.0;
  // Boost's error estimate has a round-off floor near 1e-12 of the L1 norm,
  // so that much relative error is accepted on top of abs_tol. A single
  // panel is tried first; the adaptive driver overstates the error for
  // integrands that are small on [a, b].
  double value = Rule::integrate(f, a, b, 0, 0.0, &error, &l1);
  const auto accepted = [&] { return error <= abs_tol || error <= 1e-11 * l1; };
  if (accepted()) return value;
  value = Rule::integrate(f, a, b, 20, 1e-14, &error, &l1);
  if (!accepted()) {
    char detail[96];
    std::snprintf(detail, sizeof detail, "%.3e (L1 norm %.3e)", error, l1);
    throw DomainError(std::string("integrate_adaptive: tolerance not reached, error estimate ") + detail);
  }
  return value;
}

PulseProfile::PulseProfile(std::shared_ptr<const PulseShape> shape, double duration)
    : shape_(std::move(shape)), duration_(duration) {
  check_duration(duration_);
}

PulseProfile PulseProfile::default_pulse(double duration) { return sine_squared(2.0 * pi, duration); }

PulseProfile PulseProfile::sine_squared(double area, double duration) {
  check_duration(duration);
  if (!std::isfinite(area)) throw ValidationError("pulse area must be finite");
  auto shape = std::make_shared<const SineSquaredShape>(area);
  verify_closed_form(*shape);
  return PulseProfile(std::move(shape), duration);
}

PulseProfile PulseProfile::triangle(double peak, double duration) {
  if (!std::isfinite(peak)) throw ValidationError("triangle peak must be finite");
  auto g = [peak](double s) { return peak * (1.0 - std::abs(2.0 * s - 1.0)); };
  std::ostringstream os;
  os.precision(17);
  os << "triangle(peak=" << peak << ")";
  return custom(g, duration, os.str());
}

PulseProfile PulseProfile::custom(std::function<double(double)> g, double duration, std::string name) {
  check_duration(duration);
  if (!g) throw ValidationError("custom pulse requires a shape function");
  check_boundary(g);
  return PulseProfile(std::make_shared<const QuadratureShape>(std::move(g), std::move(name), kGridCells),
                      duration);
}

PulseProfile PulseProfile::from_samples(std::vector<double> samples, double duration) {
  check_duration(duration);
  if (samples.size() < 2) throw ValidationError("sampled pulse needs at least two samples");
  for (double v : samples) {
    if (!std::isfinite(v)) throw ValidationError("sampled pulse contains a non-finite value");
  }
  const int intervals = static_cast<int>(samples.size()) - 1;
  auto g = [samples = std::move(samples), intervals](double s) {
    const double x = std::clamp(s, 0.0, 1.0) * intervals;
    const int i = std::min(intervals - 1, static_cast<int>(std::floor(x)));
    const double t = x - i;
    return (1.0 - t) * samples[static_cast<std::size_t>(i)] + t * samples[static_cast<std::size_t>(i) + 1];
  };
  check_boundary(g);
  // Align the cache grid with the sample nodes so each cell is linear.
  const int cells = intervals * std::max(1, (kGridCells + intervals - 1) / intervals);
  return PulseProfile(
      std::make_shared<const QuadratureShape>(std::move(g), "samples(" + std::to_string(intervals + 1) + ")", cells),
      duration);
}

PulseProfile PulseProfile::with_duration(double duration) const { return PulseProfile(shape_, duration); }

double PulseProfile::g(double s) const { return shape_->g(clamp_unit(s)); }

double PulseProfile::omega(double s) const { return shape_->omega(clamp_unit(s)); }

double PulseProfile::g2_integral(double s) const { return shape_->g2_integral(clamp_unit(s)); }

}  // namespace adiaspin
