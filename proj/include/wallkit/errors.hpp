#pragma once

#include <stdexcept>
#include <string>

namespace wallkit {

// Malformed request: bad flags, out-of-range rank, a residue sequence outside I^beta.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration would exceed the configured block cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A structural identity failed. The message carries a witness.
class PropertyViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal arithmetic that must be exact was not (e.g. half-integral form values).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace wallkit
