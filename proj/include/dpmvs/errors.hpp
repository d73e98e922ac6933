#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mvs {

// Base for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input from the user: malformed files, invalid configuration,
// missing scene components. Maps to exit code 2 in the CLI.
class UserError : public Error {
 public:
  using Error::Error;
};

// Malformed file contents. Carries the byte offset where parsing stopped.
class ParseError : public UserError {
 public:
  ParseError(const std::string& message, std::size_t byte_offset)
      : UserError(message + " (byte offset " + std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset) {}

  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

}  // namespace mvs
