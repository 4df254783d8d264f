#pragma once

#include <stdexcept>

namespace qfp {

// Violated operation precondition or malformed input. CLI exit code 2.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A bounded search ran out of attempts. CLI exit code 3.
class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qfp
