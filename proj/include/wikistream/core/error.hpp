// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wikistream {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ConfigurationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an event arrives with a timestamp earlier than the entity's last one.
class OrderingError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class NotFoundError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ConflictError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class UnsupportedModelError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wikistream
