#pragma once

#include <stdexcept>
#include <string>

namespace genclass {

// Input violates an operation's precondition (CLI exit code 2).
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical work did not reach the required accuracy (CLI exit code 3).
class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace genclass
