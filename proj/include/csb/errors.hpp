#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace csb {

// Invalid physical parameters or malformed input.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Numerical failure (non-convergence, negative probabilities beyond noise).
// index() names the offending eigenvalue/basis index, or -1 when not applicable.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string &what, std::ptrdiff_t index = -1)
      : std::runtime_error(what), index_(index) {}

  std::ptrdiff_t index() const noexcept { return index_; }

private:
  std::ptrdiff_t index_;
};

} // namespace csb
