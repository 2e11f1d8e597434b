#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracdiff {

enum class ErrorCode {
  Domain = 1,
  Config = 2,
  Accuracy = 3,
  Instability = 4,
  Unsupported = 5,
  Degenerate = 6,
  Io = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::Domain, what) {}
};

/// A validation failure of a configuration value; `key()` names the offending entry.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error(ErrorCode::Config, key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Raised when a series, iteration or sensitivity check misses its tolerance.
/// The best available estimate travels with the exception.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double partial)
      : Error(ErrorCode::Accuracy, what), partial_(partial) {}
  double partial_value() const noexcept { return partial_; }

 private:
  double partial_;
};

class InstabilityError : public Error {
 public:
  InstabilityError(const std::string& what, std::size_t step)
      : Error(ErrorCode::Instability, what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& what) : Error(ErrorCode::Unsupported, what) {}
};

class DegenerateError : public Error {
 public:
  explicit DegenerateError(const std::string& what) : Error(ErrorCode::Degenerate, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::Io, what) {}
};

}  // namespace fracdiff
