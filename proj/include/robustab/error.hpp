#pragma once

#include <stdexcept>
#include <string>

namespace robustab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The operation is undefined for the identically-zero polynomial.
class ZeroPolynomialError : public Error {
 public:
  ZeroPolynomialError() : Error("operation undefined for the zero polynomial") {}
  explicit ZeroPolynomialError(const std::string& what) : Error(what) {}
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

/// The interval box violates lo <= hi or has a vanishing leading interval.
class InvalidIntervalPolynomial : public Error {
 public:
  using Error::Error;
};

/// Routh array and root locations gave contradictory definite answers.
class MethodDisagreement : public Error {
 public:
  using Error::Error;
};

class HypothesisNotMet : public Error {
 public:
  using Error::Error;
};

class VertexBlowup : public Error {
 public:
  using Error::Error;
};

}  // namespace robustab
