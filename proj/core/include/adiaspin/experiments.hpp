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

// Configuration-driven sweeps producing CSV tables.
//
// A config file holds one `key = value` pair per line; `#` starts a comment
// and lists are comma-separated. Fields and rates are given in units of
// gamma and durations as T*gamma. See README.md for the key reference.

#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adiaspin/integrator.hpp"
#include "adiaspin/model.hpp"
#include "adiaspin/pulse.hpp"

namespace adiaspin {

[[nodiscard]] const char* version() noexcept;

enum class Scenario {
  pulse_dynamics,
  scaling_full,
  scaling_mid,
  scaling_reduced,
  multi_pulse_populations,
  multi_pulse_density,
  multi_pulse_coherence,
};

[[nodiscard]] std::string to_string(Scenario scenario);
/// Throws ValidationError for unknown names.
[[nodiscard]] Scenario parse_scenario(const std::string& name);
[[nodiscard]] const std::vector<std::string>& scenario_names();

struct ExperimentConfig {
  Scenario scenario = Scenario::pulse_dynamics;
  std::vector<int> n_values{2};
  double delta = 0.0;                 ///< units of gamma
  std::vector<double> v0_values{3.0};  ///< units of gamma
  double alpha = 3.0;
  double gamma = 1.0;
  std::string pulse = "sin2";  ///< sin2 | triangle | samples
  double pulse_area = 0.0;     ///< 0 selects 2 pi
  std::vector<double> pulse_samples;
  std::vector<double> T_values{400.0};  ///< T * gamma, strictly increasing
  int n_pulses = 10;
  std::vector<double> s_grid;  ///< empty selects s_points uniform points on [0, 1]
  int s_points = 51;
  /// zeros | ones | uniform | a bitstring (site 1 first) | "bits:weight, ...".
  std::string initial = "zeros";
  bool include_exact = true;
  std::string output = ".";
  int workers = 1;
  IntegratorOptions integrator;

  /// Every key with its canonical value, in a fixed order.
  [[nodiscard]] std::vector<std::pair<std::string, std::string>> entries() const;
};

/// Key reference used by the CLI help and the parser.
[[nodiscard]] const std::vector<std::string>& config_keys();

/// Applies one `key = value` assignment. Throws ValidationError for unknown
/// keys or unparsable values.
void set_config_value(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Parses the text of a config file. Keys may appear at most once.
[[nodiscard]] ExperimentConfig parse_config(const std::string& text);
[[nodiscard]] ExperimentConfig load_config(const std::string& path);

/// Scenario-level consistency checks; throws ValidationError.
void validate_config(const ExperimentConfig& config);

/// Helpers shared by the runner and its tests.
[[nodiscard]] SpinChainModel make_model(const ExperimentConfig& config, int n_sites, double v0);
[[nodiscard]] PulseProfile make_pulse(const ExperimentConfig& config, double t_gamma);
[[nodiscard]] DensityMatrix make_initial_state(const ExperimentConfig& config, int n_sites);
[[nodiscard]] std::vector<double> effective_s_grid(const ExperimentConfig& config);

struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  ///< RMS of the log residuals
};

/// Least squares on (ln x, ln y). Needs at least 3 points, all positive.
[[nodiscard]] PowerLawFit fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys);

class ResultTable {
 public:
  ResultTable() = default;
  explicit ResultTable(std::vector<std::string> header);

  void add_metadata(std::string key, std::string value);
  void add_row(std::vector<double> row);

  [[nodiscard]] const std::vector<std::string>& header() const noexcept { return header_; }
  [[nodiscard]] const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
  [[nodiscard]] const std::vector<std::pair<std::string, std::string>>& metadata() const noexcept {
    return metadata_;
  }
  [[nodiscard]] std::optional<std::string> metadata_value(const std::string& key) const;
  [[nodiscard]] std::size_t column_index(const std::string& name) const;
  [[nodiscard]] std::vector<double> column(const std::string& name) const;

  /// `# key = value` preamble, header row, then rows in %.12e.
  void write_csv(std::ostream& out) const;
  void write_csv(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

/// Runs `count` independent tasks on up to `workers` threads. Task i writes
/// only to its own slot, so results do not depend on the worker count. The
/// first exception thrown by any task is rethrown after all threads join.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& task);

/// Runs a scenario. Integrator failures at a sweep point produce a row with
/// status = 1 and zeroed values; config errors throw ValidationError.
[[nodiscard]] ResultTable run_scenario(const ExperimentConfig& config);

/// `<output>/<scenario>.csv`.
[[nodiscard]] std::string output_path(const ExperimentConfig& config);

}  // namespace adiaspin
