#pragma once

#include <stdexcept>
#include <string>

namespace cargoload {

// Shape disagreement between an assignment/bitstring and its instance.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Malformed or inconsistent configuration, instance or checkpoint file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A search space or state vector larger than the configured budget.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Parameter vector does not match the circuit it is bound to.
class BindingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NormalizationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace cargoload
