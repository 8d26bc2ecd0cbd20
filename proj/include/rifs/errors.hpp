#pragma once

#include <stdexcept>
#include <string>

namespace rifs {

// An argument lies outside the set on which the operation is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed or unusable configuration (bad JSON, unknown family, grid too small).
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A well-formed configuration the operation does not handle, e.g. epsilon == 0
// for the transfer operators.
class UnsupportedConfiguration : public ConfigurationError {
 public:
  using ConfigurationError::ConfigurationError;
};

// A documented precondition of the operation does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rifs
