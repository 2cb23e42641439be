#pragma once

#include <stdexcept>
#include <string>

namespace costlab {

/// A domain error: invalid objects, violated preconditions, failed searches.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a command line cannot be interpreted at all.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace costlab
