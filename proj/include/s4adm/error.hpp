#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace s4adm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad syntax, bad ids, arity mismatch).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Syntax error while reading formula or rule text; `position` is a byte offset.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)),
        detail_(what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }
  /// The message without the position suffix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t position_;
};

/// A configured resource cap (tableau nodes, subsets, decomposition steps) was hit.
/// This is never a verdict.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace s4adm
