#pragma once

#include <stdexcept>
#include <string>

namespace isogauge {

/// Raised when an input violates a documented precondition (bad sample
/// count, non-finite values, lost convexity, malformed configuration).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace isogauge
