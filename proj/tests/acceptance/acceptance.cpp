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

// End-to-end acceptance checks. Each criterion prints exactly one line
//
//   PASS <name>: <measured values>
//   FAIL <name>: <measured values>
//
// followed by optional indented "info" lines. `--only <name>` runs a single
// criterion; the exit status is nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "adiaspin/adiabatic.hpp"
#include "adiaspin/evolution.hpp"
#include "adiaspin/experiments.hpp"
#include "adiaspin/observables.hpp"
#include "adiaspin/spectral.hpp"

using namespace adiaspin;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  std::vector<std::string> info;
};

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

std::string fmt(const char* format, double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, format, v);
  return buffer;
}

std::string sci(double v) { return fmt("%.3e", v); }
std::string fixed(double v) { return fmt("%.4f", v); }

double frobenius(const ComplexMatrix& m) { return m.norm(); }

int workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

const std::vector<double> kScalingT{100.0, 200.0, 400.0, 800.0, 1600.0};
const std::vector<double> kAsymptoticT{3200.0, 6400.0, 12800.0};

struct Distance {
  double full = 0.0;
  double reduced = 0.0;  // site 1 only
};

// D(exact, exponential first-order map) at normalized time s.
Distance scaling_distance(int n, double s, double t_gamma) {
  const SpinChainModel model(n, 0.0, 3.0, 3.0, 1.0);
  const PulseProfile pulse = PulseProfile::default_pulse(t_gamma);
  const DensityMatrix rho0 = DensityMatrix::basis_state(n, 0);
  const DensityMatrix exact = evolve_exact(model, pulse, rho0, {s}).states.back();
  const DensityMatrix approx = apply_first_order_map(model, pulse, s, rho0, MapMode::exponential);
  return {trace_distance(exact, approx), trace_distance(partial_trace(exact, 1, n), partial_trace(approx, 1, n))};
}

std::vector<Distance> distances(int n, double s, const std::vector<double>& ts) {
  std::vector<Distance> out(ts.size());
  parallel_for(ts.size(), workers(), [&](std::size_t i) { out[i] = scaling_distance(n, s, ts[i]); });
  return out;
}

std::vector<double> column_of(const std::vector<Distance>& ds, bool reduced) {
  std::vector<double> out;
  for (const Distance& d : ds) out.push_back(reduced ? d.reduced : d.full);
  return out;
}

std::string series(const std::vector<double>& ts, const std::vector<double>& ds) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ts.size(); ++i) os << (i ? " " : "") << ts[i] << ":" << sci(ds[i]);
  return os.str();
}

Outcome eigen_relation() {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<Index> pick(0, 7);
  const PulseProfile pulse = PulseProfile::default_pulse(400.0);
  double worst = 0.0;
  int checked = 0;
  for (double delta : {0.0, 1.0}) {
    for (double v0 : {0.0, 3.0}) {
      const SpinChainModel model(3, delta, v0, 3.0, 1.0);
      const RotatedGenerator gen(model, pulse);
      std::vector<EigenLabel> labels;
      for (int i = 0; i < 200; ++i) {
        labels.push_back({ClassicalConfig::from_index(pick(rng), 3), ClassicalConfig::from_index(pick(rng), 3)});
      }
      for (int k = 0; k < 20; ++k) {
        const double s = unit(rng);
        for (const EigenLabel& label : labels) {
          const ComplexMatrix p = eigenmatrix(pulse, s, label);
          const ComplexMatrix residual = gen.apply(s, p) - eigenvalue(model, label).value() * p;
          worst = std::max(worst, frobenius(residual) / frobenius(p));
          ++checked;
        }
      }
    }
  }
  return {worst <= 1e-10, "max relative residual " + sci(worst) + " over " + std::to_string(checked) + " checks", {}};
}

Outcome oracle_equivalence() {
  const double t_gamma = 400.0;
  double worst = 0.0;
  int checked = 0;
  for (int n : {2, 3}) {
    for (double delta : {0.0, 1.0}) {
      for (double v0 : {0.0, 3.0}) {
        const SpinChainModel model(n, delta, v0, 3.0, 1.0);
        const PulseProfile pulse = PulseProfile::default_pulse(t_gamma);
        for (int k = 0; k < 10; ++k) {
          const double s = (k + 1) / 10.0;
          const SuperOperator a = build_A(model, pulse, s);
          for (Index p = 0; p < model.dim(); ++p) {
            const ComplexMatrix pp = DensityMatrix::basis_state(n, p).matrix();
            const ComplexMatrix constructed = pp + a(pp) / pulse.duration();
            const DensityMatrix direct = rotate_frame(
                pulse, s, first_order_direct(model, pulse, s, ClassicalConfig::from_index(p, n)), FrameDirection::to_lab);
            worst = std::max(worst, max_abs(ComplexMatrix(direct.matrix() - constructed)));
            ++checked;
          }
        }
      }
    }
  }
  return {worst <= 1e-10, "max entry deviation " + sci(worst) + " over " + std::to_string(checked) + " states", {}};
}

Outcome scaling(double s, double lo, double hi) {
  const std::vector<double> ds = column_of(distances(2, s, kScalingT), false);
  const PowerLawFit fit = fit_power_law(kScalingT, ds);
  Outcome out;
  out.pass = fit.slope >= lo && fit.slope <= hi;
  out.detail = "slope " + fixed(fit.slope) + " (window [" + fixed(lo) + ", " + fixed(hi) + "]) over Tgamma 100..1600";
  out.info.push_back("D(Tgamma): " + series(kScalingT, ds));
  const std::vector<double> late = column_of(distances(2, s, kAsymptoticT), false);
  out.info.push_back("slope over Tgamma 3200..12800: " + fixed(fit_power_law(kAsymptoticT, late).slope) + " (" +
                     series(kAsymptoticT, late) + ")");
  return out;
}

Outcome scaling_end() { return scaling(1.0, -3.3, -2.7); }
Outcome scaling_mid() { return scaling(0.5, -2.3, -1.7); }

Outcome scaling_reduced() {
  const std::vector<int> ns{2, 3, 4};
  std::vector<std::vector<double>> full;
  std::vector<std::vector<double>> red;
  Outcome out;
  bool slopes_ok = true;
  std::string slopes;
  for (int n : ns) {
    const std::vector<Distance> ds = distances(n, 1.0, kScalingT);
    full.push_back(column_of(ds, false));
    red.push_back(column_of(ds, true));
    const double slope = fit_power_law(kScalingT, red.back()).slope;
    slopes_ok = slopes_ok && slope >= -3.3 && slope <= -2.7;
    slopes += (slopes.empty() ? "" : ", ") + ("N=" + std::to_string(n) + " " + fixed(slope));
    out.info.push_back("N=" + std::to_string(n) + " full " + series(kScalingT, full.back()));
    out.info.push_back("N=" + std::to_string(n) + " reduced " + series(kScalingT, red.back()));
  }
  // Spread of ln D across N at each T; the reduced spread must be at most half.
  bool spread_ok = true;
  double worst_ratio = 0.0;
  for (std::size_t i = 0; i < kScalingT.size(); ++i) {
    double fmin = 1e300, fmax = -1e300, rmin = 1e300, rmax = -1e300;
    for (std::size_t j = 0; j < ns.size(); ++j) {
      fmin = std::min(fmin, std::log(full[j][i]));
      fmax = std::max(fmax, std::log(full[j][i]));
      rmin = std::min(rmin, std::log(red[j][i]));
      rmax = std::max(rmax, std::log(red[j][i]));
    }
    const double ratio = (rmax - rmin) / (fmax - fmin);
    worst_ratio = std::max(worst_ratio, ratio);
    spread_ok = spread_ok && ratio <= 0.5;
  }
  out.pass = slopes_ok && spread_ok;
  out.detail = "reduced slopes " + slopes + " (window [-3.3, -2.7]); max spread ratio reduced/full " +
               fixed(worst_ratio) + " (need <= 0.5)";
  return out;
}

double max_population_deviation(double t_gamma) {
  const SpinChainModel model(2, 0.0, 3.0, 3.0, 1.0);
  const PulseProfile pulse = PulseProfile::default_pulse(t_gamma);
  const DensityMatrix rho0 = DensityMatrix::basis_state(2, 0);
  const Trajectory exact = evolve_multi_pulse_exact(model, pulse, rho0, 10, {1.0});
  double worst = 0.0;
  for (int m = 1; m <= 10; ++m) {
    const DensityMatrix map = multi_pulse_map(model, pulse, rho0, m);
    const DensityMatrix& e = exact.states[static_cast<std::size_t>(m - 1)];
    for (Index i = 0; i < 4; ++i) worst = std::max(worst, std::abs(e.matrix()(i, i).real() - map.matrix()(i, i).real()));
  }
  return worst;
}

Outcome multi_pulse() {
  const double fine = max_population_deviation(1e4);
  const double coarse = max_population_deviation(1e3);
  const bool pass = fine <= 1e-2 && coarse <= 5e-2 && coarse > fine;
  return {pass,
          "max deviation " + sci(fine) + " at Tgamma=1e4 (<= 1e-2), " + sci(coarse) +
              " at Tgamma=1e3 (<= 5e-2 and larger)",
          {}};
}

Outcome closed_form_v0() {
  const double t_gamma = 1e3;
  const SpinChainModel model(4, 0.0, 0.0, 3.0, 1.0);
  const PulseProfile pulse = PulseProfile::default_pulse(t_gamma);
  const DensityMatrix rho0 = DensityMatrix::basis_state(4, 0);
  const Trajectory exact = evolve_multi_pulse_exact(model, pulse, rho0, 20, {1.0});
  double map_err = 0.0;
  double exact_err = 0.0;
  for (int m = 1; m <= 20; ++m) {
    const double want = 0.5 * (1.0 - std::exp(-48.0 * pi * pi * m / t_gamma));
    map_err = std::max(map_err, std::abs(excitation_density(multi_pulse_map(model, pulse, rho0, m)) - want));
    exact_err = std::max(exact_err, std::abs(excitation_density(exact.states[static_cast<std::size_t>(m - 1)]) - want));
  }
  return {map_err <= 1e-3 && exact_err <= 1e-2,
          "map error " + sci(map_err) + " (<= 1e-3), exact error " + sci(exact_err) + " (<= 1e-2)",
          {}};
}

Outcome kinetic_plateau() {
  const double t_gamma = 1e3;
  const PulseProfile pulse = PulseProfile::default_pulse(t_gamma);
  const DensityMatrix rho0 = DensityMatrix::basis_state(4, 0);
  const SpinChainModel free(4, 0.0, 0.0, 3.0, 1.0);
  const SpinChainModel constrained(4, 0.0, 5.0, 3.0, 1.0);
  const double n_free = excitation_density(multi_pulse_map(free, pulse, rho0, 10));
  const double n_constrained = excitation_density(multi_pulse_map(constrained, pulse, rho0, 10));
  const double c_free = entropy_of_coherence(fractional_pulse_state(free, pulse, rho0, 15, 0.5));
  const double c_constrained = entropy_of_coherence(fractional_pulse_state(constrained, pulse, rho0, 15, 0.5));
  const bool pass = n_free - n_constrained >= 0.05 && c_constrained > c_free;
  return {pass,
          "density at m=10: V0=5 " + fixed(n_constrained) + " vs V0=0 " + fixed(n_free) +
              "; S_coh(s=1/2) at m=15: V0=5 " + sci(c_constrained) + " vs V0=0 " + sci(c_free),
          {}};
}

Outcome generator_hygiene() {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto random_matrix = [&](Index d) {
    ComplexMatrix m(d, d);
    for (Index i = 0; i < d; ++i) {
      for (Index j = 0; j < d; ++j) m(i, j) = Complex(normal(rng), normal(rng));
    }
    return m;
  };
  double trace = 0.0, herm = 0.0, locality = 0.0, diag = 0.0, stoch = 0.0, stationary = 0.0;
  for (int n : {2, 3, 4}) {
    for (double v0 : {0.0, 3.0}) {
      const SpinChainModel model(n, 1.0, v0, 3.0, 1.0);
      const PulseProfile pulse = PulseProfile::default_pulse(400.0);
      const Index d = model.dim();
      for (int trial = 0; trial < 10; ++trial) {
        const double s = unit(rng);
        const SuperOperator a = build_A(model, pulse, s);
        const ComplexMatrix x = random_matrix(d);
        const ComplexMatrix ax = a(x);
        const double scale = std::max(1.0, max_abs(ax));
        trace = std::max(trace, std::abs(ax.trace()) / scale);
        herm = std::max(herm, max_abs(ComplexMatrix(a(ComplexMatrix(x.adjoint())) - ax.adjoint())) / scale);
        RealVector probs(d);
        for (Index i = 0; i < d; ++i) probs[i] = unit(rng);
        probs /= probs.sum();
        const ComplexMatrix diag_in = probs.cast<Complex>().asDiagonal();
        const ComplexMatrix out = a(diag_in);
        for (Index i = 0; i < d; ++i) {
          for (Index j = 0; j < d; ++j) {
            if (__builtin_popcountll(static_cast<unsigned long long>(i ^ j)) > 1) {
              locality = std::max(locality, std::abs(out(i, j)) / scale);
            }
          }
        }
        ComplexMatrix end = build_A(model, pulse, 1.0)(diag_in);
        const double end_scale = std::max(1.0, max_abs(end));
        end.diagonal().setZero();
        diag = std::max(diag, max_abs(end) / end_scale);
      }
      const ClassicalRateMatrix w = classical_rate_matrix(model, pulse);
      for (int m : {1, 10, 100}) {
        const RealMatrix e = w.propagator(m / pulse.duration());
        stoch = std::max(stoch, std::max(-e.minCoeff(), (e.colwise().sum().array() - 1.0).abs().maxCoeff()));
      }
      stationary = std::max(stationary, (w.matrix() * RealVector::Constant(d, 1.0 / d)).cwiseAbs().maxCoeff());
    }
  }
  const double worst = std::max({trace, herm, locality, diag, stoch, stationary});
  return {worst <= 1e-10,
          "trace " + sci(trace) + ", hermiticity " + sci(herm) + ", locality " + sci(locality) + ", diagonal " +
              sci(diag) + ", stochastic " + sci(stoch) + ", stationary " + sci(stationary),
          {}};
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {"eigen_relation", eigen_relation},     {"oracle_equivalence", oracle_equivalence},
      {"scaling_end", scaling_end},           {"scaling_mid", scaling_mid},
      {"scaling_reduced", scaling_reduced},   {"multi_pulse", multi_pulse},
      {"closed_form_v0", closed_form_v0},     {"kinetic_plateau", kinetic_plateau},
      {"generator_hygiene", generator_hygiene},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::string only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--list") == 0) {
      for (const Criterion& c : criteria()) std::printf("%s\n", c.name);
      return 0;
    }
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = argv[++i];
    } else {
      std::fprintf(stderr, "usage: %s [--list] [--only <criterion>]\n", argv[0]);
      return 2;
    }
  }

  int selected = 0;
  int failed = 0;
  for (const Criterion& c : criteria()) {
    if (!only.empty() && only != c.name) continue;
    ++selected;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("error: ") + e.what(), {}};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s: %s [%.1fs]\n", out.pass ? "PASS" : "FAIL", c.name, out.detail.c_str(), seconds);
    for (const std::string& line : out.info) std::printf("    info: %s\n", line.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failed;
  }
  if (selected == 0) {
    std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
