#pragma once

#include <stdexcept>
#include <string>

namespace ofa {

/// Raised for argument values outside a function's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Auction parameters that do not describe a valid auction.
class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed to converge or bracket a root. For valid
/// inputs this indicates a bug.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ofa
