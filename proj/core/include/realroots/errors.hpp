#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace realroots {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arity, degree or shape mismatch between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A real argument lies outside the domain where the formula is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularError : public Error {
 public:
  using Error::Error;
};

/// Thrown when a request would exceed a configured size cap (mesh points, tensor entries).
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual or JSON input. `position()` is a 0-based character offset
/// when known, or npos.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t position = std::string::npos)
      : Error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace realroots
