#pragma once

#include <stdexcept>
#include <string>

namespace hsge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Level index or bin index outside the valid range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Invalid numeric parameter (ratio, cluster count, fold count, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Edge set that does not form a connected graphlet.
class InvalidGraphletError : public Error {
 public:
  using Error::Error;
};

// Edge or node that does not exist in the referenced graph.
class ReferenceError : public Error {
 public:
  using Error::Error;
};

// Operation called in the wrong lifecycle state.
class StateError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Versioned file with wrong magic, wrong version or truncated payload.
class FormatError : public Error {
 public:
  using Error::Error;
};

class DegenerateModelError : public Error {
 public:
  using Error::Error;
};

}  // namespace hsge
