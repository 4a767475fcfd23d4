#pragma once

#include <stdexcept>
#include <string>

namespace rangekit {

/// Bad input: violated precondition, malformed record, inconsistent parameters.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rangekit
