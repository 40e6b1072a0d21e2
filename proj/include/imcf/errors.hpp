#pragma once

#include <stdexcept>
#include <string>

namespace imcf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (coordinate, volume, level).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration; `field()` names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// A numerical procedure failed to reach its tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Tabulated data too rough for second derivatives.
class NonSmoothDataError : public Error {
 public:
  NonSmoothDataError(double noise, const std::string& what) : Error(what), noise_(noise) {}
  double noise() const { return noise_; }

 private:
  double noise_;
};

}  // namespace imcf
