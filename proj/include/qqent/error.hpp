#pragma once

#include <stdexcept>
#include <string>

namespace qqent {

// Bad input: wrong shape, non-Hermitian, weights that do not sum to one.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of a formula.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Rounding beyond the clamp tolerance or a solver that failed to converge.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qqent
