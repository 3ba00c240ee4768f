#pragma once

#include <stdexcept>

namespace ksp {

// Thrown when a computation would exceed its configured precision ceiling.
// Carries the required precision in the message so callers can raise the cap.
class resource_limit_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace ksp
