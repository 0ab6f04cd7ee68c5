#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace lerch {

/// Short form of a real number for error messages.
inline std::string brief(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Invalid input: violated preconditions or invariants. The CLI maps these to
// exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Failure of a well-posed computation. The CLI maps these to exit code 1.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "computation error"; }
};

class PoleError : public ComputationError {
 public:
  using ComputationError::ComputationError;
  const char* kind() const noexcept override { return "pole error"; }
};

class ConvergenceError : public ComputationError {
 public:
  using ComputationError::ComputationError;
  const char* kind() const noexcept override { return "non-convergence error"; }
};

class RadiusError : public ComputationError {
 public:
  using ComputationError::ComputationError;
  const char* kind() const noexcept override { return "radius error"; }
};

class EmptyWindowError : public ComputationError {
 public:
  using ComputationError::ComputationError;
  const char* kind() const noexcept override { return "empty-window error"; }
};

}  // namespace lerch
