#pragma once

#include <stdexcept>
#include <string>

namespace kannan {

/// Bad argument to an operation (out-of-range n, short tuple, bad index).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input that cannot be turned into the requested structure (non-square
/// matrix, matrix that is not a metric, unparsable document).
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Value outside the domain of a closed-form rule.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A caller-supplied function broke its contract (e.g. returned a negative
/// value where a non-negative one is required).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace kannan
