#pragma once

#include <stdexcept>
#include <string>

namespace hyperpotential {

// Base of every error thrown by the library. The command-line tool maps any
// DomainError to exit code 2.
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Gamma evaluated at a nonpositive integer in exact mode.
class PoleError : public DomainError {
public:
  using DomainError::DomainError;
};

// Addition of two ExactScalars with different half-powers of pi.
class MixedPiPower : public DomainError {
public:
  using DomainError::DomainError;
};

class DivisionByZero : public DomainError {
public:
  using DomainError::DomainError;
};

class DimensionMismatch : public DomainError {
public:
  using DomainError::DomainError;
};

// Convolution requested at a parameter pair for which the T*/U* convolution
// table gives no value.
class ExcludedParameters : public DomainError {
public:
  using DomainError::DomainError;
};

class UnsupportedLogAtom : public DomainError {
public:
  using DomainError::DomainError;
};

class LogShapeError : public DomainError {
public:
  using DomainError::DomainError;
};

class UndefinedOperator : public DomainError {
public:
  using DomainError::DomainError;
};

// Index or parameter outside the validity window of a closed form.
class OutOfRange : public DomainError {
public:
  using DomainError::DomainError;
};

class DimensionTooSmall : public DomainError {
public:
  using DomainError::DomainError;
};

class QuadratureFailure : public DomainError {
public:
  using DomainError::DomainError;
};

class StepTooLarge : public DomainError {
public:
  using DomainError::DomainError;
};

// Malformed JSON or command-line input.
class ParseError : public DomainError {
public:
  using DomainError::DomainError;
};

} // namespace hyperpotential
