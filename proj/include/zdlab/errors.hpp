#pragma once

#include <stdexcept>
#include <string>

namespace zdlab {

// A well-posed question whose mathematical answer is negative
// (not pseudo-effective, search budget exhausted, ...). CLI exit code 1.
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPseudoEffective : public MathError {
 public:
  using MathError::MathError;
};

class BudgetExceeded : public MathError {
 public:
  using MathError::MathError;
};

// Caller supplied malformed input: dimension mismatch, violated precondition,
// unparsable literal. CLI exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionError : public UsageError {
 public:
  using UsageError::UsageError;
};

class ModelMismatch : public UsageError {
 public:
  using UsageError::UsageError;
};

class PreconditionError : public UsageError {
 public:
  using UsageError::UsageError;
};

// A certificate or internal identity failed to re-verify. CLI exit code 3.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Declared generators do not behave like curves on a surface.
class ModelInconsistency : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

}  // namespace zdlab
