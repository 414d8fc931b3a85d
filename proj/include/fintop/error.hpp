#pragma once

#include <stdexcept>
#include <string>

namespace fintop {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An input violates a structural requirement (not a topology, not continuous,
/// dimension mismatch, ...).
class ValidationError : public Error {
public:
  using Error::Error;
};

/// A configured size bound was exceeded.
class LimitError : public Error {
public:
  using Error::Error;
};

/// Malformed interchange text.
class ParseError : public Error {
public:
  using Error::Error;
};

}  // namespace fintop
