#pragma once

#include <stdexcept>
#include <string>

namespace gausshor {

/// Precondition violation on caller-supplied arguments.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested state would exceed the amplitude-count cap.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A state or distribution broke its normalization invariant.
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gausshor
