#pragma once

#include <stdexcept>
#include <string>

namespace sqz {

/// Bad input: wrong shape, asymmetric matrix, out-of-range parameter.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative routine failed to converge or produced a singular system.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable or malformed input file.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sqz
