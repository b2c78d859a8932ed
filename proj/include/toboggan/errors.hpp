#pragma once

#include <stdexcept>
#include <string>

namespace toboggan {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter violates the documented range of the owning module.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Propagation produced NaN/Inf (step too large or exponent out of range).
class NonFiniteState : public Error {
 public:
  using Error::Error;
};

/// Bisection was handed an interval without a sign change.
class BracketInvalid : public Error {
 public:
  using Error::Error;
};

/// Special function evaluated outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The pair-presence predicate flipped more than once across a bracket.
class PredicateNoisy : public Error {
 public:
  PredicateNoisy(const std::string& what, std::string raw_scan)
      : Error(what), raw_scan_(std::move(raw_scan)) {}

  const std::string& raw_scan() const noexcept { return raw_scan_; }

 private:
  std::string raw_scan_;
};

}  // namespace toboggan
