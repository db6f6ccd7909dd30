#pragma once

#include <stdexcept>
#include <string>

namespace strposet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file or command-line token. `where` names the position
/// (JSON path, byte offset, or argument) that failed.
class ParseError : public Error {
 public:
  ParseError(std::string where, const std::string& what)
      : Error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// A fragment or map failed its structural invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A size or enumeration budget was exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace strposet
