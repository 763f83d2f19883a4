#pragma once

#include <stdexcept>
#include <string>

namespace rlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A graph or search would exceed the fixed vertex capacity.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Parameters outside an operation's domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed external input (graph6, pattern strings, manifests).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An exact enumeration would exceed its configured bound.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// A construction or certificate failed its own re-verification.
class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace rlab
