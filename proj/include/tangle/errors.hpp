#pragma once

#include <stdexcept>
#include <string>

namespace tangle {

// Malformed call: wrong dims, empty inputs, indices out of range.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input violates a numerical invariant (unitarity, Hermiticity, norm, weights).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Curve evaluated outside its parameter domain.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Zero vector handed to something that needs a direction.
class DegenerateInputError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace tangle
