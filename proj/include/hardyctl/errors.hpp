#pragma once

#include <stdexcept>
#include <string>

namespace hardyctl {

/// Base of all numerical-guard errors. `module` names the subsystem that
/// raised the guard so the CLI can report provenance (exit code 3).
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& what)
      : std::runtime_error("[" + module + "] " + what), module_(std::move(module)) {}
  const std::string& module() const { return module_; }

 private:
  std::string module_;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Working precision cannot certify the requested tolerance (cancellation in
/// a series, or a Gram system too ill-conditioned). Remedy: raise
/// mantissa_bits or lower K.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// A computed root escaped its proven two-sided bracket; signals an
/// evaluation bug rather than a user error.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// Two independent routes to the same quantity disagree beyond tolerance;
/// signals a formula transcription bug.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A target mode's e^(lambda*T) weight exceeds the log-space budget; the mode
/// is unreachable at this precision/horizon.
class MagnitudeError : public Error {
 public:
  using Error::Error;
};

/// Inputs that fail validation before any numerics run (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hardyctl
