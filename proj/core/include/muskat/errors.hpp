#pragma once

#include <stdexcept>
#include <string>

namespace muskat {

/// Base class for every error raised by the library.
class MuskatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad exponent, order, index...).
class InvalidArgument : public MuskatError {
 public:
  using MuskatError::MuskatError;
};

class NonFiniteFlux : public MuskatError {
 public:
  using MuskatError::MuskatError;
};

class CflViolation : public MuskatError {
 public:
  using MuskatError::MuskatError;
};

/// The curve came closer to itself than the configured chord-arc floor.
class ChordArcViolation : public MuskatError {
 public:
  using MuskatError::MuskatError;
};

class NoCriticalPoint : public MuskatError {
 public:
  using MuskatError::MuskatError;
};

/// Configuration rejected; `field()` names the offending key.
class ConfigError : public MuskatError {
 public:
  ConfigError(std::string field, const std::string& message)
      : MuskatError(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class SchemaError : public MuskatError {
 public:
  using MuskatError::MuskatError;
};

}  // namespace muskat
