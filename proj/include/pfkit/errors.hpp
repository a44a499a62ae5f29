#pragma once

#include <stdexcept>
#include <string>

namespace pfkit {

/// Precondition or argument violation (bad bounds, wrong alphabet, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A request that exceeds the configured resource guards.
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed serialized input (PFW1 files, JSON rule tables, dyadic strings).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pfkit
