#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lzero {

/// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a function (Lambert W below -1/e, gamma poles, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

class LambertDomainError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An iteration ran out of budget before reaching the requested accuracy.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// |L| vanished to working precision where its argument was requested.
class ZeroOfLError : public PrecisionError {
 public:
  using PrecisionError::PrecisionError;
};

class InvalidCharacter : public Error {
 public:
  using Error::Error;
};

class InvalidDescriptor : public Error {
 public:
  using Error::Error;
};

class InsufficientCoefficients : public Error {
 public:
  InsufficientCoefficients(std::size_t required, std::size_t available)
      : Error("insufficient coefficients: need " + std::to_string(required) + ", have " +
              std::to_string(available)),
        required_(required) {}
  std::size_t required() const { return required_; }

 private:
  std::size_t required_;
};

/// No sign change of the zero equation around the seed.
class BracketFailure : public Error {
 public:
  BracketFailure(const std::string& what, std::vector<double> candidates)
      : Error(what), candidates_(std::move(candidates)) {}
  /// Ordinates of the nearest sign changes seen while scanning, if any.
  const std::vector<double>& candidates() const { return candidates_; }

 private:
  std::vector<double> candidates_;
};

/// The equation was solved but |L| at the solution is not small.
class ResidualTooLarge : public Error {
 public:
  ResidualTooLarge(const std::string& what, double ordinate, double log10_residual)
      : Error(what), ordinate_(ordinate), log10_residual_(log10_residual) {}
  double ordinate() const { return ordinate_; }
  double log10_residual() const { return log10_residual_; }

 private:
  double ordinate_;
  double log10_residual_;
};

class ScanExhausted : public Error {
 public:
  using Error::Error;
};

/// A counting-function midpoint disagreed with the labels; intervals are (n_low, n_high).
class StaircaseViolation : public Error {
 public:
  StaircaseViolation(const std::string& what, std::vector<std::pair<long, long>> intervals)
      : Error(what), intervals_(std::move(intervals)) {}
  const std::vector<std::pair<long, long>>& intervals() const { return intervals_; }

 private:
  std::vector<std::pair<long, long>> intervals_;
};

}  // namespace lzero
