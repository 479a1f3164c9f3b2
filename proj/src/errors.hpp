#pragma once

#include <stdexcept>

namespace expcrit {

// Numerical machinery gave up (a singular_failure blocking a result);
// distinct from invalid input so callers can map exit codes.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace expcrit
