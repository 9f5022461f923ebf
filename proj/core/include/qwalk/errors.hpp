#pragma once

#include <stdexcept>

namespace qwalk {

/// Invalid argument for the mathematical operation (out-of-range index,
/// space mismatch, overlapping supports, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A computation would exceed the desk-scale bounds the library enforces.
/// The message states the bound that was hit.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qwalk
