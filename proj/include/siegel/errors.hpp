#pragma once

#include <stdexcept>
#include <string>

namespace siegel {

class SiegelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input or configuration. The CLI maps these to exit code 2.
class InputError : public SiegelError {
 public:
  using SiegelError::SiegelError;
};

// Floating-point breakdown or a violated numerical precondition. Exit code 3.
class NumericalError : public SiegelError {
 public:
  using SiegelError::SiegelError;
};

class ConfigError : public InputError {
 public:
  using InputError::InputError;
};
class DimensionMismatch : public InputError {
 public:
  using InputError::InputError;
};
class InvalidPermutation : public InputError {
 public:
  using InputError::InputError;
};
class RankOutOfRange : public InputError {
 public:
  using InputError::InputError;
};
class ExpansionDomain : public InputError {
 public:
  using InputError::InputError;
};
class BranchAmbiguity : public InputError {
 public:
  using InputError::InputError;
};

class SingularDenominator : public NumericalError {
 public:
  using NumericalError::NumericalError;
};
class NumericalFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};
class PoleProximity : public NumericalError {
 public:
  using NumericalError::NumericalError;
};
class NotPositiveDefinite : public NumericalError {
 public:
  using NumericalError::NumericalError;
};
class IntegerOverflow : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace siegel
