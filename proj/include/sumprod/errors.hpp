#pragma once

#include <stdexcept>
#include <string>

namespace sumprod {

/// Base class of every error raised by the library. The CLI maps any of
/// these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CompositeCharacteristic : public Error {
 public:
  using Error::Error;
};

class ReducibleModulus : public Error {
 public:
  using Error::Error;
};

class FieldMismatch : public Error {
 public:
  FieldMismatch() : Error("operands belong to different fields") {}
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
  using Error::Error;
};

class FieldTooLarge : public Error {
 public:
  using Error::Error;
};

class InvalidThreshold : public Error {
 public:
  using Error::Error;
};

class InvalidAlpha : public Error {
 public:
  using Error::Error;
};

class InvalidAction : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class DegenerateSpec : public Error {
 public:
  using Error::Error;
};

class ZeroDilation : public Error {
 public:
  ZeroDilation() : Error("dilation by zero") {}
  using Error::Error;
};

class ContainsZero : public Error {
 public:
  ContainsZero() : Error("set contains 0, inverse undefined") {}
  using Error::Error;
};

/// Malformed textual input (descriptors, subset specs, predicates, rationals).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace sumprod
