#pragma once

#include <stdexcept>
#include <string>

namespace tlm {

/// Malformed or inconsistent input (shape mismatch, non-finite samples,
/// p > u at a sample, empty sequences).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parameter lies outside the mathematical domain of an operation
/// (m <= n for the eta kernel, a <= 0, t <= 0, p < 1 for the dual exponent).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The grid cannot resolve what was asked of it.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The caller used the wrong entry point (e.g. the semimodular with p < 1).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A construction precondition failed at a specific sample.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tlm
