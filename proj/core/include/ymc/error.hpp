// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace ymc {

/// Base of every error raised by the library. Carries the module that
/// rejected the call and the name of the violated precondition so that the
/// command line runner can report both.
class Error : public std::runtime_error {
 public:
  Error(std::string module, std::string name, const std::string& detail)
      : std::runtime_error(module + ": " + name + ": " + detail),
        module_(std::move(module)),
        name_(std::move(name)) {}

  const std::string& module() const noexcept { return module_; }
  const std::string& name() const noexcept { return name_; }

 private:
  std::string module_;
  std::string name_;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Gauge field violates the Coulomb condition beyond tolerance.
class GaugeError : public Error {
 public:
  using Error::Error;
};

/// Request exceeds the size a dense or truncated representation supports.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Iterative method failed to converge or produced non-finite values.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ymc
