#pragma once

#include <stdexcept>
#include <string>

namespace knotprime {

/// Malformed or inconsistent input data (bad PD code, Omega/Delta mismatch, ...).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Two independent computations that must agree did not. Always a bug.
class ConsistencyError : public std::runtime_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace knotprime
