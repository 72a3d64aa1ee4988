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

// adiaspin run --config <file> [--scenario <name>] [--out <dir>] [--workers <n>]
// adiaspin validate --config <file>
//
// Failures print one line to stderr,
//
//   error: kind=<kind> message="<text>"
//
// and exit with 1 (2 for command-line usage errors).

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "adiaspin/errors.hpp"
#include "adiaspin/experiments.hpp"

namespace {

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

int report(const std::string& kind, const std::string& message, int code) {
  std::cerr << "error: kind=" << kind << " message=\"" << escape(message) << "\"\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adiabatic dynamics of dissipative spin chains"};
  app.set_version_flag("--version", std::string(adiaspin::version()));
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> scenario;
  std::optional<std::string> out_dir;
  std::optional<int> workers;

  CLI::App* run = app.add_subcommand("run", "Run a scenario and write <out>/<scenario>.csv");
  run->add_option("--config", config_path, "Config file (key = value lines)")->required();
  run->add_option("--scenario", scenario, "Override the scenario key");
  run->add_option("--out", out_dir, "Override the output directory");
  run->add_option("--workers", workers, "Override the worker count");

  std::string validate_path;
  CLI::App* validate = app.add_subcommand("validate", "Parse and check a config without running it");
  validate->add_option("--config", validate_path, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("usage", e.what(), 2);
  }

  try {
    if (*validate) {
      const adiaspin::ExperimentConfig config = adiaspin::load_config(validate_path);
      adiaspin::validate_config(config);
      std::cout << "ok: " << validate_path << " scenario=" << adiaspin::to_string(config.scenario) << "\n";
      return 0;
    }
    adiaspin::ExperimentConfig config = adiaspin::load_config(config_path);
    if (scenario) adiaspin::set_config_value(config, "scenario", *scenario);
    if (out_dir) adiaspin::set_config_value(config, "output", *out_dir);
    if (workers) config.workers = *workers;
    const adiaspin::ResultTable table = adiaspin::run_scenario(config);
    const std::string path = adiaspin::output_path(config);
    table.write_csv(path);
    const auto failed = table.metadata_value("failed_points").value_or("0");
    std::cout << "wrote " << path << " rows=" << table.rows().size() << " failed_points=" << failed << "\n";
    return 0;
  } catch (const adiaspin::Error& e) {
    return report(std::string(e.kind()), e.what(), 1);
  } catch (const std::exception& e) {
    return report("internal", e.what(), 1);
  }
}
