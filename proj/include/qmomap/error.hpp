#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qmomap {

// Bad input: malformed expressions, invalid models, mismatched operands.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace qmomap
