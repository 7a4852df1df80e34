#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace feff {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text; `position` is a 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error("parse error at " + std::to_string(position) + ": " + what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A precondition on an argument was violated (wrong size, wrong subspace, n < 2, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An intermediate polynomial exceeded the configured total-degree cap.
class DegreeCapExceeded : public Error {
 public:
  using Error::Error;
};

/// An identity that must hold by construction failed; signals a bug, not bad input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace feff
