#pragma once

#include <stdexcept>
#include <string>

namespace egyfrac {

/// An input lies outside the range the library is configured to handle
/// (word-size budget, desk-scale caps).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// An argument violates a mathematical domain restriction (even Jacobi
/// modulus, non-reduced fraction, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A documented operation precondition is not met.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Cache file contents do not match their recorded checksum, or are malformed.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cache file was produced by another format version or for another query.
class StaleCacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace egyfrac
