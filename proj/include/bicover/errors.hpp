#pragma once

#include <stdexcept>

namespace bicover {

// Malformed input: bad documents, inconsistent structures, missing pieces.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A hypothesis of the requested operation fails; the message names it.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configured cap or timeout was reached. Never a nonexistence claim.
struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bicover
