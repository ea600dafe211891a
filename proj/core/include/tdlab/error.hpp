#pragma once

#include <stdexcept>
#include <string>

namespace tdlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violates a domain invariant (symbol outside [0,1], empty block, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An index lies outside the built range. The message names the violated bound.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// An operation was called with arguments outside its admissible range.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured resource cap (maximum length, iteration count) would be exceeded.
class ResourceCapError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace tdlab
