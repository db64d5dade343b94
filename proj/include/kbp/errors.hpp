#pragma once

#include <stdexcept>
#include <string>

namespace kbp {

/// Malformed user input: bad vertex index, parse failure, invalid probability.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A formula or check was invoked outside the parameter range where it is proven.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exhaustive enumeration would exceed its hard cap.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A threshold search could not establish a bracket around probability 1/2.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant failed. Always a bug in this library.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace kbp
