#pragma once

#include <stdexcept>
#include <string>

namespace idstates {

/// Malformed or out-of-domain user input (dimension mismatch, bad frequency
/// vector, guard exceeded). The CLI maps this to exit status 1.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace idstates
