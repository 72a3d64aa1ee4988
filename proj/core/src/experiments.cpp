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

#include "adiaspin/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "adiaspin/adiabatic.hpp"
#include "adiaspin/errors.hpp"
#include "adiaspin/evolution.hpp"
#include "adiaspin/observables.hpp"

#ifndef ADIASPIN_VERSION_STRING
#define ADIASPIN_VERSION_STRING "unknown"
#endif

namespace adiaspin {
namespace {

using std::numbers::pi;

const std::vector<std::pair<Scenario, std::string>>& scenario_table() {
  static const std::vector<std::pair<Scenario, std::string>> table = {
      {Scenario::pulse_dynamics, "pulse_dynamics"},
      {Scenario::scaling_full, "scaling_full"},
      {Scenario::scaling_mid, "scaling_mid"},
      {Scenario::scaling_reduced, "scaling_reduced"},
      {Scenario::multi_pulse_populations, "multi_pulse_populations"},
      {Scenario::multi_pulse_density, "multi_pulse_density"},
      {Scenario::multi_pulse_coherence, "multi_pulse_coherence"},
  };
  return table;
}

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::string format_real(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    if constexpr (std::is_floating_point_v<T>) {
      out += format_real(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

// Accepts plain reals and multiples of pi such as "pi", "2pi" or "0.5*pi".
double parse_real(const std::string& key, const std::string& raw) {
  std::string text = trim(raw);
  double factor = 1.0;
  if (text.size() >= 2 && text.compare(text.size() - 2, 2, "pi") == 0) {
    factor = pi;
    text = trim(text.substr(0, text.size() - 2));
    if (!text.empty() && text.back() == '*') text = trim(text.substr(0, text.size() - 1));
    if (text.empty()) return pi;
  }
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ValidationError("config: key '" + key + "' expects a real number, got '" + raw + "'");
  }
  return value * factor;
}

int parse_int(const std::string& key, const std::string& raw) {
  const std::string text = trim(raw);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ValidationError("config: key '" + key + "' expects an integer, got '" + raw + "'");
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& raw) {
  const std::string text = trim(raw);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ValidationError("config: key '" + key + "' expects true or false, got '" + raw + "'");
}

std::vector<double> parse_real_list(const std::string& key, const std::string& raw) {
  std::vector<double> out;
  for (const std::string& item : split_list(raw)) out.push_back(parse_real(key, item));
  if (out.empty()) throw ValidationError("config: key '" + key + "' needs at least one value");
  return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& raw) {
  std::vector<int> out;
  for (const std::string& item : split_list(raw)) out.push_back(parse_int(key, item));
  if (out.empty()) throw ValidationError("config: key '" + key + "' needs at least one value");
  return out;
}

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) return false;
  }
  return true;
}

// Column label for a configuration, e.g. p_01 with site 1 first.
std::string population_label(const std::string& prefix, Index index, int n_sites) {
  return prefix + "p_" + ClassicalConfig::from_index(index, n_sites).to_string();
}

bool single_n_scenario(Scenario s) {
  return s == Scenario::pulse_dynamics || s == Scenario::multi_pulse_populations;
}

double evaluation_point(Scenario s) { return s == Scenario::scaling_mid ? 0.5 : 1.0; }

struct SweepPoint {
  int n_sites;
  double v0;
  double t_gamma;
};

std::vector<SweepPoint> sweep_points(const ExperimentConfig& config) {
  std::vector<SweepPoint> points;
  for (int n : config.n_values) {
    for (double v0 : config.v0_values) {
      for (double t : config.T_values) points.push_back({n, v0, t});
    }
  }
  return points;
}

// Rows produced by one sweep point; failed points keep the right shape.
struct PointResult {
  std::vector<std::vector<double>> rows;
  std::string failure;
};

void add_config_metadata(ResultTable& table, const ExperimentConfig& config) {
  table.add_metadata("adiaspin_version", version());
  for (const auto& [key, value] : config.entries()) table.add_metadata(key, value);
  table.add_metadata("entropy_log_base", kEntropyLogBase);
  table.add_metadata("units", "rates and fields in gamma, durations as T*gamma");
}

void add_fit_metadata(ResultTable& table, const std::string& name, const std::vector<double>& xs,
                      const std::vector<double>& ys) {
  if (xs.size() < 3) {
    table.add_metadata(name, "unavailable (fewer than 3 points)");
    return;
  }
  try {
    const PowerLawFit fit = fit_power_law(xs, ys);
    table.add_metadata(name, "slope=" + format_real(fit.slope) + " intercept=" + format_real(fit.intercept) +
                                 " residual=" + format_real(fit.residual));
  } catch (const Error& e) {
    table.add_metadata(name, std::string("unavailable (") + e.what() + ")");
  }
}

ResultTable gather(std::vector<std::string> header, std::vector<PointResult> results, const ExperimentConfig& config) {
  ResultTable table(std::move(header));
  add_config_metadata(table, config);
  std::size_t failures = 0;
  for (const PointResult& r : results) {
    if (!r.failure.empty()) {
      ++failures;
      table.add_metadata("failed_point", r.failure);
    }
  }
  table.add_metadata("failed_points", std::to_string(failures));
  for (PointResult& r : results) {
    for (auto& row : r.rows) table.add_row(std::move(row));
  }
  return table;
}

std::string describe_point(const SweepPoint& p, const std::exception& e) {
  return "n_sites=" + std::to_string(p.n_sites) + " v0=" + format_real(p.v0) + " T_gamma=" + format_real(p.t_gamma) +
         ": " + e.what();
}

std::vector<PointResult> run_points(const ExperimentConfig& config, const std::vector<SweepPoint>& points,
                                    const std::function<PointResult(const SweepPoint&)>& compute,
                                    const std::function<PointResult(const SweepPoint&)>& failed) {
  std::vector<PointResult> results(points.size());
  parallel_for(points.size(), config.workers, [&](std::size_t i) {
    try {
      results[i] = compute(points[i]);
    } catch (const ConvergenceError& e) {
      results[i] = failed(points[i]);
      results[i].failure = describe_point(points[i], e);
    }
  });
  return results;
}

ResultTable run_pulse_dynamics(const ExperimentConfig& config) {
  const SweepPoint point{config.n_values.front(), config.v0_values.front(), config.T_values.front()};
  const SpinChainModel model = make_model(config, point.n_sites, point.v0);
  const PulseProfile pulse = make_pulse(config, point.t_gamma);
  const DensityMatrix rho0 = make_initial_state(config, point.n_sites);
  const std::vector<double> grid = effective_s_grid(config);

  std::vector<std::string> header{"s"};
  const auto add_block = [&header, &model](const std::string& prefix) {
    for (Index i = 0; i < model.dim(); ++i) header.push_back(population_label(prefix, i, model.n_sites()));
    header.push_back(prefix + "cx");
    header.push_back(prefix + "cy");
  };
  if (config.include_exact) add_block("exact_");
  add_block("adiabatic_");
  header.push_back("adiabatic_min_eigenvalue");
  header.push_back("status");

  const auto observe = [](const DensityMatrix& rho, std::vector<double>& row) {
    for (Index i = 0; i < rho.dim(); ++i) row.push_back(rho.matrix()(i, i).real());
    row.push_back(coherence_expect(rho, Axis::x));
    row.push_back(coherence_expect(rho, Axis::y));
  };

  std::vector<DensityMatrix> adiabatic(grid.size(), rho0);
  parallel_for(grid.size(), config.workers, [&](std::size_t i) {
    adiabatic[i] = apply_first_order_map(model, pulse, grid[i], rho0, MapMode::exponential);
  });

  ResultTable table(header);
  add_config_metadata(table, config);
  std::vector<DensityMatrix> exact;
  std::string failure;
  if (config.include_exact) {
    try {
      exact = evolve_exact(model, pulse, rho0, grid, config.integrator).states;
    } catch (const ConvergenceError& e) {
      failure = describe_point(point, e);
    }
  }
  table.add_metadata("failed_points", failure.empty() ? "0" : "1");
  if (!failure.empty()) table.add_metadata("failed_point", failure);

  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<double> row{grid[i]};
    if (config.include_exact) {
      if (failure.empty()) {
        observe(exact[i], row);
      } else {
        row.insert(row.end(), static_cast<std::size_t>(model.dim()) + 2, 0.0);
      }
    }
    observe(adiabatic[i], row);
    row.push_back(adiabatic[i].min_eigenvalue());
    row.push_back(failure.empty() ? 0.0 : 1.0);
    table.add_row(std::move(row));
  }
  return table;
}

ResultTable run_scaling(const ExperimentConfig& config) {
  const bool reduced = config.scenario == Scenario::scaling_reduced;
  const double s_eval = evaluation_point(config.scenario);
  const std::vector<SweepPoint> points = sweep_points(config);

  std::vector<std::string> header{"n_sites", "v0", "T_gamma"};
  if (reduced) {
    header.push_back("distance_full");
    header.push_back("distance_reduced");
  } else {
    header.push_back("distance");
  }
  header.push_back("status");

  const auto compute = [&](const SweepPoint& p) {
    const SpinChainModel model = make_model(config, p.n_sites, p.v0);
    const PulseProfile pulse = make_pulse(config, p.t_gamma);
    const DensityMatrix rho0 = make_initial_state(config, p.n_sites);
    const DensityMatrix exact = evolve_exact(model, pulse, rho0, {s_eval}, config.integrator).states.back();
    const DensityMatrix approx = apply_first_order_map(model, pulse, s_eval, rho0, MapMode::exponential);
    std::vector<double> row{static_cast<double>(p.n_sites), p.v0, p.t_gamma, trace_distance(exact, approx)};
    if (reduced) {
      row.push_back(trace_distance(partial_trace(exact, 1, p.n_sites), partial_trace(approx, 1, p.n_sites)));
    }
    row.push_back(0.0);
    return PointResult{{row}, {}};
  };
  const auto failed = [&](const SweepPoint& p) {
    std::vector<double> row{static_cast<double>(p.n_sites), p.v0, p.t_gamma, 0.0};
    if (reduced) row.push_back(0.0);
    row.push_back(1.0);
    return PointResult{{row}, {}};
  };

  ResultTable table = gather(header, run_points(config, points, compute, failed), config);
  table.add_metadata("evaluation_s", format_real(s_eval));

  // One power-law fit per (N, V0) series over the successful points.
  const std::size_t status = table.column_index("status");
  for (int n : config.n_values) {
    for (double v0 : config.v0_values) {
      std::vector<double> xs;
      std::vector<double> full;
      std::vector<double> red;
      for (const auto& row : table.rows()) {
        if (row[0] != n || row[1] != v0 || row[status] != 0.0) continue;
        xs.push_back(row[2]);
        full.push_back(row[3]);
        if (reduced) red.push_back(row[4]);
      }
      const std::string suffix = "[n_sites=" + std::to_string(n) + ",v0=" + format_real(v0) + "]";
      add_fit_metadata(table, reduced ? "fit_full" + suffix : "fit" + suffix, xs, full);
      if (reduced) add_fit_metadata(table, "fit_reduced" + suffix, xs, red);
    }
  }
  return table;
}

ResultTable run_multi_pulse(const ExperimentConfig& config) {
  const Scenario scenario = config.scenario;
  const std::vector<SweepPoint> points = sweep_points(config);
  const int n_pulses = config.n_pulses;
  const bool exact_wanted = config.include_exact;

  std::vector<std::string> header{"n_sites", "v0", "T_gamma", "m"};
  const int populations_n = config.n_values.front();
  const Index populations_dim = Index{1} << populations_n;
  switch (scenario) {
    case Scenario::multi_pulse_populations:
      for (const std::string prefix : {"map_", "exact_"}) {
        if (prefix == std::string("exact_") && !exact_wanted) continue;
        for (Index i = 0; i < populations_dim; ++i) header.push_back(population_label(prefix, i, populations_n));
      }
      if (exact_wanted) header.push_back("max_deviation");
      break;
    case Scenario::multi_pulse_density:
      header.push_back("density_map");
      if (exact_wanted) header.push_back("density_exact");
      break;
    default:
      header.push_back("s_coh_map");
      header.push_back("density_map");
      if (exact_wanted) {
        header.push_back("s_coh_exact");
        header.push_back("density_exact");
      }
      break;
  }
  header.push_back("status");
  const std::size_t width = header.size();

  const auto compute = [&](const SweepPoint& p) {
    const SpinChainModel model = make_model(config, p.n_sites, p.v0);
    const PulseProfile pulse = make_pulse(config, p.t_gamma);
    const DensityMatrix rho0 = make_initial_state(config, p.n_sites);
    const bool midpoint = scenario == Scenario::multi_pulse_coherence;

    std::vector<DensityMatrix> exact;
    if (exact_wanted) {
      const std::vector<double> grid = midpoint ? std::vector<double>{0.5, 1.0} : std::vector<double>{1.0};
      Trajectory t = evolve_multi_pulse_exact(model, pulse, rho0, n_pulses, grid, config.integrator);
      for (std::size_t i = 0; i < t.times.size(); ++i) {
        const double frac = t.times[i] - std::floor(t.times[i]);
        if (midpoint == (frac != 0.0)) exact.push_back(std::move(t.states[i]));
      }
    }

    PointResult result;
    // Boundary snapshots run over m = 0..n_pulses, midpoints over m = 0..n_pulses-1.
    const int rows = midpoint ? n_pulses : n_pulses + 1;
    for (int m = 0; m < rows; ++m) {
      std::vector<double> row{static_cast<double>(p.n_sites), p.v0, p.t_gamma, static_cast<double>(m)};
      if (midpoint) {
        const DensityMatrix approx = fractional_pulse_state(model, pulse, rho0, m, 0.5);
        row.push_back(entropy_of_coherence(approx));
        row.push_back(excitation_density(approx));
        if (exact_wanted) {
          const DensityMatrix& e = exact.at(static_cast<std::size_t>(m));
          row.push_back(entropy_of_coherence(e));
          row.push_back(excitation_density(e));
        }
      } else {
        const DensityMatrix approx = multi_pulse_map(model, pulse, rho0, m);
        const DensityMatrix* e = nullptr;
        if (exact_wanted) e = m == 0 ? &rho0 : &exact.at(static_cast<std::size_t>(m - 1));
        if (scenario == Scenario::multi_pulse_populations) {
          double deviation = 0.0;
          for (Index i = 0; i < model.dim(); ++i) row.push_back(approx.matrix()(i, i).real());
          if (e != nullptr) {
            for (Index i = 0; i < model.dim(); ++i) {
              row.push_back(e->matrix()(i, i).real());
              deviation = std::max(deviation, std::abs(e->matrix()(i, i).real() - approx.matrix()(i, i).real()));
            }
            row.push_back(deviation);
          }
        } else {
          row.push_back(excitation_density(approx));
          if (e != nullptr) row.push_back(excitation_density(*e));
        }
      }
      row.push_back(0.0);
      result.rows.push_back(std::move(row));
    }
    return result;
  };
  const auto failed = [&](const SweepPoint& p) {
    PointResult result;
    const int rows = scenario == Scenario::multi_pulse_coherence ? n_pulses : n_pulses + 1;
    for (int m = 0; m < rows; ++m) {
      std::vector<double> row(width, 0.0);
      row[0] = p.n_sites;
      row[1] = p.v0;
      row[2] = p.t_gamma;
      row[3] = m;
      row.back() = 1.0;
      result.rows.push_back(std::move(row));
    }
    return result;
  };
  return gather(header, run_points(config, points, compute, failed), config);
}

}  // namespace

const char* version() noexcept { return ADIASPIN_VERSION_STRING; }

std::string to_string(Scenario scenario) {
  for (const auto& [value, name] : scenario_table()) {
    if (value == scenario) return name;
  }
  return "unknown";
}

Scenario parse_scenario(const std::string& name) {
  for (const auto& [value, text] : scenario_table()) {
    if (text == name) return value;
  }
  throw ValidationError("unknown scenario '" + name + "'");
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& entry : scenario_table()) out.push_back(entry.second);
    return out;
  }();
  return names;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "scenario", "n_sites",  "n_values", "delta",   "v0",       "v0_values",     "alpha",  "gamma",
      "pulse",    "pulse_area", "pulse_samples", "T_values", "n_pulses", "s_grid", "s_points", "initial",
      "include_exact", "output", "workers", "rtol", "atol", "max_steps",
  };
  return keys;
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::entries() const {
  std::vector<std::pair<std::string, std::string>> out = {
      {"scenario", to_string(scenario)},
      {"n_values", join(n_values)},
      {"delta", format_real(delta)},
      {"v0_values", join(v0_values)},
      {"alpha", format_real(alpha)},
      {"gamma", format_real(gamma)},
      {"pulse", pulse},
      {"pulse_area", format_real(pulse_area == 0.0 ? 2.0 * pi : pulse_area)},
  };
  if (pulse == "samples") out.emplace_back("pulse_samples", join(pulse_samples));
  out.emplace_back("T_values", join(T_values));
  out.emplace_back("n_pulses", std::to_string(n_pulses));
  if (s_grid.empty()) {
    out.emplace_back("s_points", std::to_string(s_points));
  } else {
    out.emplace_back("s_grid", join(s_grid));
  }
  out.emplace_back("initial", initial);
  out.emplace_back("include_exact", include_exact ? "true" : "false");
  out.emplace_back("workers", std::to_string(workers));
  out.emplace_back("rtol", format_real(integrator.rtol));
  out.emplace_back("atol", format_real(integrator.atol));
  out.emplace_back("max_steps", std::to_string(integrator.max_steps));
  return out;
}

void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "scenario") {
    config.scenario = parse_scenario(value);
  } else if (key == "n_sites" || key == "n_values") {
    config.n_values = parse_int_list(key, value);
  } else if (key == "delta") {
    config.delta = parse_real(key, value);
  } else if (key == "v0" || key == "v0_values") {
    config.v0_values = parse_real_list(key, value);
  } else if (key == "alpha") {
    config.alpha = parse_real(key, value);
  } else if (key == "gamma") {
    config.gamma = parse_real(key, value);
  } else if (key == "pulse") {
    if (value != "sin2" && value != "triangle" && value != "samples") {
      throw ValidationError("config: pulse must be sin2, triangle or samples, got '" + value + "'");
    }
    config.pulse = value;
  } else if (key == "pulse_area") {
    config.pulse_area = parse_real(key, value);
  } else if (key == "pulse_samples") {
    config.pulse_samples = parse_real_list(key, value);
  } else if (key == "T_values") {
    config.T_values = parse_real_list(key, value);
  } else if (key == "n_pulses") {
    config.n_pulses = parse_int(key, value);
  } else if (key == "s_grid") {
    config.s_grid = parse_real_list(key, value);
  } else if (key == "s_points") {
    config.s_points = parse_int(key, value);
  } else if (key == "initial") {
    if (value.empty()) throw ValidationError("config: initial must not be empty");
    config.initial = value;
  } else if (key == "include_exact") {
    config.include_exact = parse_bool(key, value);
  } else if (key == "output") {
    if (value.empty()) throw ValidationError("config: output must not be empty");
    config.output = value;
  } else if (key == "workers") {
    config.workers = parse_int(key, value);
  } else if (key == "rtol") {
    config.integrator.rtol = parse_real(key, value);
  } else if (key == "atol") {
    config.integrator.atol = parse_real(key, value);
  } else if (key == "max_steps") {
    const int steps = parse_int(key, value);
    if (steps < 1) throw ValidationError("config: max_steps must be positive");
    config.integrator.max_steps = static_cast<std::size_t>(steps);
  } else {
    throw ValidationError("config: unknown key '" + key + "'");
  }
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig config;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(line_number) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    // n_sites/n_values and v0/v0_values are aliases and count as one key.
    std::string canonical = key == "n_sites" ? "n_values" : key == "v0" ? "v0_values" : key;
    if (!seen.insert(canonical).second) {
      throw ValidationError("config line " + std::to_string(line_number) + ": duplicate key '" + key + "'");
    }
    try {
      set_config_value(config, key, line.substr(eq + 1));
    } catch (const ValidationError& e) {
      throw ValidationError("config line " + std::to_string(line_number) + ": " + e.what());
    }
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

void validate_config(const ExperimentConfig& config) {
  const auto fail = [](const std::string& message) { throw ValidationError("config: " + message); };
  if (config.n_values.empty()) fail("n_values must not be empty");
  for (int n : config.n_values) {
    if (n < 1 || n > kMaxMatrixSites) fail("n_sites must lie in [1, " + std::to_string(kMaxMatrixSites) + "]");
  }
  if (config.v0_values.empty()) fail("v0_values must not be empty");
  if (!(config.gamma > 0.0)) fail("gamma must be positive");
  if (!(config.alpha > 0.0)) fail("alpha must be positive");
  if (config.T_values.empty()) fail("T_values must not be empty");
  for (double t : config.T_values) {
    if (!(t > 0.0)) fail("T_values must be positive");
  }
  if (!strictly_increasing(config.T_values)) fail("T_values must be strictly increasing");
  if (config.n_pulses < 0) fail("n_pulses must be nonnegative");
  if (config.workers < 1) fail("workers must be at least 1");
  if (!(config.integrator.rtol > 0.0) || !(config.integrator.atol > 0.0)) fail("rtol and atol must be positive");
  if (!config.s_grid.empty()) {
    for (double s : config.s_grid) {
      if (!(s >= 0.0 && s <= 1.0)) fail("s_grid values must lie in [0, 1]");
    }
    if (!strictly_increasing(config.s_grid)) fail("s_grid must be strictly increasing");
  } else if (config.s_points < 2) {
    fail("s_points must be at least 2");
  }
  if (config.pulse == "samples" && config.pulse_samples.size() < 2) fail("pulse = samples needs pulse_samples");

  const Scenario s = config.scenario;
  if (single_n_scenario(s) && config.n_values.size() != 1) {
    fail(to_string(s) + " takes exactly one n_sites value (population columns depend on it)");
  }
  if (s == Scenario::pulse_dynamics && (config.v0_values.size() != 1 || config.T_values.size() != 1)) {
    fail("pulse_dynamics takes exactly one v0 and one T value");
  }
  if (s == Scenario::multi_pulse_coherence && config.n_pulses < 1) fail("multi_pulse_coherence needs n_pulses >= 1");
  if (s == Scenario::scaling_full || s == Scenario::scaling_mid || s == Scenario::scaling_reduced) {
    for (int n : config.n_values) {
      if (n > kMaxSuperoperatorSites) fail("scaling scenarios support n_sites <= 5");
    }
  }
  // Builds every model, pulse and initial state once so that errors surface
  // before any integration starts.
  for (int n : config.n_values) {
    for (double v0 : config.v0_values) (void)make_model(config, n, v0);
    (void)make_initial_state(config, n);
  }
  (void)make_pulse(config, config.T_values.front());
}

SpinChainModel make_model(const ExperimentConfig& config, int n_sites, double v0) {
  try {
    return SpinChainModel(n_sites, config.delta * config.gamma, v0 * config.gamma, config.alpha, config.gamma);
  } catch (const Error& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
}

PulseProfile make_pulse(const ExperimentConfig& config, double t_gamma) {
  const double duration = t_gamma / config.gamma;
  const double area = config.pulse_area == 0.0 ? 2.0 * pi : config.pulse_area;
  try {
    if (config.pulse == "sin2") return PulseProfile::sine_squared(area, duration);
    if (config.pulse == "triangle") return PulseProfile::triangle(2.0 * area, duration);
    return PulseProfile::from_samples(config.pulse_samples, duration);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
}

DensityMatrix make_initial_state(const ExperimentConfig& config, int n_sites) {
  const std::string& spec = config.initial;
  try {
    if (spec == "zeros") return DensityMatrix::basis_state(n_sites, 0);
    if (spec == "ones") return DensityMatrix::basis_state(n_sites, (Index{1} << n_sites) - 1);
    if (spec == "uniform") return DensityMatrix::maximally_mixed(n_sites);
    std::vector<std::pair<ClassicalConfig, double>> weights;
    for (const std::string& item : split_list(spec)) {
      const auto colon = item.find(':');
      const std::string bits = trim(item.substr(0, colon));
      const double w = colon == std::string::npos ? 1.0 : parse_real("initial", item.substr(colon + 1));
      const ClassicalConfig c = ClassicalConfig::parse(bits);
      if (c.size() != n_sites) {
        throw ValidationError("configuration '" + bits + "' does not have " + std::to_string(n_sites) + " sites");
      }
      weights.emplace_back(c, w);
    }
    return mixture_to_density(ClassicalMixture(n_sites, std::move(weights)));
  } catch (const Error& e) {
    throw ValidationError("config: initial '" + spec + "': " + e.what());
  }
}

std::vector<double> effective_s_grid(const ExperimentConfig& config) {
  if (!config.s_grid.empty()) return config.s_grid;
  std::vector<double> grid(static_cast<std::size_t>(config.s_points));
  for (int i = 0; i < config.s_points; ++i) grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / (config.s_points - 1);
  return grid;
}

PowerLawFit fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw ShapeError("fit_power_law: xs and ys differ in length");
  if (xs.size() < 3) throw DomainError("fit_power_law: at least 3 points are required");
  const std::size_t n = xs.size();
  Eigen::MatrixXd design(static_cast<Index>(n), 2);
  Eigen::VectorXd rhs(static_cast<Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0) || !std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
      throw DomainError("fit_power_law: data must be positive and finite");
    }
    design(static_cast<Index>(i), 0) = std::log(xs[i]);
    design(static_cast<Index>(i), 1) = 1.0;
    rhs[static_cast<Index>(i)] = std::log(ys[i]);
  }
  const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);
  const Eigen::VectorXd residual = design * coef - rhs;
  return {coef[0], coef[1], std::sqrt(residual.squaredNorm() / static_cast<double>(n))};
}

ResultTable::ResultTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw ValidationError("ResultTable: header must not be empty");
}

void ResultTable::add_metadata(std::string key, std::string value) {
  metadata_.emplace_back(std::move(key), std::move(value));
}

void ResultTable::add_row(std::vector<double> row) {
  if (row.size() != header_.size()) {
    throw ShapeError("ResultTable: row has " + std::to_string(row.size()) + " values, header has " +
                     std::to_string(header_.size()));
  }
  for (double v : row) {
    if (!std::isfinite(v)) throw DomainError("ResultTable: non-finite entry");
  }
  rows_.push_back(std::move(row));
}

std::optional<std::string> ResultTable::metadata_value(const std::string& key) const {
  for (const auto& [k, v] : metadata_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::size_t ResultTable::column_index(const std::string& name) const {
  const auto it = std::find(header_.begin(), header_.end(), name);
  if (it == header_.end()) throw IndexError("ResultTable: no column '" + name + "'");
  return static_cast<std::size_t>(it - header_.begin());
}

std::vector<double> ResultTable::column(const std::string& name) const {
  const std::size_t index = column_index(name);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) out.push_back(row[index]);
  return out;
}

void ResultTable::write_csv(std::ostream& out) const {
  for (const auto& [key, value] : metadata_) out << "# " << key << " = " << value << '\n';
  for (std::size_t i = 0; i < header_.size(); ++i) out << (i > 0 ? "," : "") << header_[i];
  out << '\n';
  char buffer[32];
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buffer, sizeof buffer, "%.12e", row[i]);
      out << (i > 0 ? "," : "") << buffer;
    }
    out << '\n';
  }
}

void ResultTable::write_csv(const std::string& path) const {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  write_csv(out);
  if (!out) throw ValidationError("failed while writing '" + path + "'");
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& task) {
  if (count == 0) return;
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, workers)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  // Rethrow by task index so the reported error does not depend on scheduling.
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

ResultTable run_scenario(const ExperimentConfig& config) {
  validate_config(config);
  switch (config.scenario) {
    case Scenario::pulse_dynamics:
      return run_pulse_dynamics(config);
    case Scenario::scaling_full:
    case Scenario::scaling_mid:
    case Scenario::scaling_reduced:
      return run_scaling(config);
    default:
      return run_multi_pulse(config);
  }
}

std::string output_path(const ExperimentConfig& config) {
  return (std::filesystem::path(config.output) / (to_string(config.scenario) + ".csv")).string();
}

}  // namespace adiaspin
