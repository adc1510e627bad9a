#pragma once

#include <stdexcept>
#include <string>

namespace rv14 {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed cycle notation, group file or assignment file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Bundled or user-supplied data failed an integrity check.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap (group closure, residual enumeration) was hit.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// An operation needed a fully assigned function but met a FREE orbit.
class IndeterminateFace : public Error {
 public:
  using Error::Error;
};

/// A witness or argument refers to elements outside the ambient group.
class WitnessError : public Error {
 public:
  using Error::Error;
};

}  // namespace rv14
