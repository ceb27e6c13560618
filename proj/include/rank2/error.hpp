#pragma once

#include <stdexcept>
#include <string>

namespace rank2 {

/// Base of every error raised by the library. Mathematical obstructions that
/// are part of a verdict (inconsistent constant systems, failed pole
/// conditions) are returned as values instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class CenterMismatch : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class NonlinearInConstants : public Error {
 public:
  using Error::Error;
};

class LeadingCoefficientNotScalar : public Error {
 public:
  using Error::Error;
};

class ZeroSeries : public Error {
 public:
  using Error::Error;
};

/// A computation tried to read a coefficient at or beyond the validity order
/// of a truncated series.
class InsufficientTruncation : public Error {
 public:
  using Error::Error;
};

class UnsupportedHalfPeriod : public Error {
 public:
  using Error::Error;
};

class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

/// A spectral-curve coefficient turned out to depend on x.
class XDependence : public Error {
 public:
  XDependence(int z_power, std::string series)
      : Error("spectral curve coefficient of z^" + std::to_string(z_power) +
              " depends on x: " + series),
        z_power(z_power),
        series(std::move(series)) {}
  int z_power;
  std::string series;
};

class ResonantDenominator : public Error {
 public:
  using Error::Error;
};

}  // namespace rank2
