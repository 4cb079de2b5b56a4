#pragma once

#include <stdexcept>

namespace qic {

// Error taxonomy shared by every module. Callers can catch the std base
// classes or these specific types.

/// An index argument lies outside the range allowed for a bitstring.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Array or parameter lengths disagree with the ansatz or target.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A value is outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The request would exceed a configured size cap.
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed experiment configuration or input file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Broken internal invariant (e.g. a sign matrix expected to be regular).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qic
