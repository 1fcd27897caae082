#pragma once

#include <stdexcept>
#include <string>

namespace uemb {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: dimension mismatch, bad literal, index out of range.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A point set whose hull is not full-dimensional.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// The origin is not interior to the hull, so the hull is no unit ball.
class NotAUnitBallError : public Error {
 public:
  using Error::Error;
};

/// A definition that breaks a structural rule (asymmetric set, bad field, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The dual extreme points do not define a norm.
class NotANormError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its precondition (e.g. a non-unit vector).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A selector vector annihilates a dual extreme point.
class SelectorError : public Error {
 public:
  using Error::Error;
};

/// Index points that do not norm the space.
class NotAnIsometryError : public Error {
 public:
  using Error::Error;
};

/// Two independent computations disagree; indicates a bug, never bad input.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace uemb
