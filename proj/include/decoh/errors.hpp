#pragma once

#include <stdexcept>
#include <string>

namespace decoh {

/// Input data violates a documented file schema or CLI contract.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

/// A computation failed a physical validity check (non-convergence,
/// loss of positivity, orthonormality breakdown, ...).
class PhysicsError : public std::runtime_error {
 public:
  explicit PhysicsError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace decoh
