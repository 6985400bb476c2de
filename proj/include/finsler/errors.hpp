#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace finsler {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sample or intermediate left the real domain of the metric or chart
/// (slit violation, point outside the chart, sqrt of a non-positive value).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The squared convolution F^2 is not positive at the sample.
class NonPositive : public DomainError {
 public:
  NonPositive(const std::string& what, double squared_value)
      : DomainError(what), squared_value_(squared_value) {}
  double squared_value() const noexcept { return squared_value_; }

 private:
  double squared_value_;
};

/// A denominator vanished in a ratio test.
class DivisionDomain : public DomainError {
 public:
  using DomainError::DomainError;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// The 1-form of a Randers metric has alpha-norm >= 1 at `witness`.
class RandersInvalid : public InvalidParameter {
 public:
  RandersInvalid(const std::string& what, std::vector<double> witness,
                 double beta_norm)
      : InvalidParameter(what), witness_(std::move(witness)),
        beta_norm_(beta_norm) {}
  const std::vector<double>& witness() const noexcept { return witness_; }
  double beta_norm() const noexcept { return beta_norm_; }

 private:
  std::vector<double> witness_;
  double beta_norm_;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

}  // namespace finsler
