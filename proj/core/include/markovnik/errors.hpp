#pragma once

#include <stdexcept>
#include <string>

namespace markovnik {

/// Precondition or parameter-domain violation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A polynomial operation would exceed the configured degree cap.
class DegreeOverflow : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Floating-point overflow during evaluation or coefficient arithmetic.
class OutOfRange : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// Real-root isolation could not separate roots at the grid density used.
class RootIsolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature did not reach its tolerance within the panel budget.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace markovnik
