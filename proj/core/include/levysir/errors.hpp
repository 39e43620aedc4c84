#pragma once

#include <stdexcept>
#include <string>

namespace levysir {

/// An input violates a documented invariant (parameters, states, measures,
/// integrator settings, config documents).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation left its mathematical domain, e.g. a logarithm of a
/// non-positive argument.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Reading or writing a file failed. The message carries the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace levysir
