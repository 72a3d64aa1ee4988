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

#include <stdexcept>
#include <string>
#include <string_view>

namespace adiaspin {

/// Base class of every error raised by the library. `kind()` is a stable,
/// machine-readable tag used by the CLI error line.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  [[nodiscard]] virtual std::string_view kind() const noexcept = 0;
};

class ShapeError final : public Error {
 public:
  using Error::Error;
  [[nodiscard]] std::string_view kind() const noexcept override { return "shape"; }
};

class CapacityError final : public Error {
 public:
  using Error::Error;
  [[nodiscard]] std::string_view kind() const noexcept override { return "capacity"; }
};

class IndexError final : public Error {
 public:
  using Error::Error;
  [[nodiscard]] std::string_view kind() const noexcept override { return "index"; }
};

class DomainError final : public Error {
 public:
  using Error::Error;
  [[nodiscard]] std::string_view kind() const noexcept override { return "domain"; }
};

class ValidationError final : public Error {
 public:
  using Error::Error;
  [[nodiscard]] std::string_view kind() const noexcept override { return "validation"; }
};

/// Raised when the adaptive integrator cannot reach the requested tolerance.
class ConvergenceError final : public Error {
 public:
  ConvergenceError(const std::string& what, double reached_time, double achieved_error)
      : Error(what), reached_time_(reached_time), achieved_error_(achieved_error) {}

  [[nodiscard]] std::string_view kind() const noexcept override { return "convergence"; }
  [[nodiscard]] double reached_time() const noexcept { return reached_time_; }
  /// Last scaled local error estimate (1.0 means exactly at tolerance).
  [[nodiscard]] double achieved_error() const noexcept { return achieved_error_; }

 private:
  double reached_time_;
  double achieved_error_;
};

}  // namespace adiaspin
