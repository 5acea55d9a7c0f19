#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coexpr {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text; carries a byte offset into the source.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), message_(message), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }
  /// The message without the offset suffix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t offset_;
};

class LatticeError : public Error {
 public:
  using Error::Error;
};

class FunctorError : public Error {
 public:
  using Error::Error;
};

/// Raised when an operation requires a well-typed expression and gets
/// something else.
class TypeError : public Error {
 public:
  using Error::Error;
};

/// A value does not have the shape dictated by its functor.
class ShapeError : public Error {
 public:
  using Error::Error;
};

class CoalgebraError : public Error {
 public:
  using Error::Error;
};

}  // namespace coexpr
