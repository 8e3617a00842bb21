#pragma once

#include <stdexcept>
#include <string>

namespace helastic {

/// Violated precondition of a library call (mismatched base points, grid sizes, ...).
class ContractError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Argument outside the mathematical domain of an operation (r <= 0, y2 <= 0, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Curve is no longer an immersion: some line element fell below the threshold.
class ImmersionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A curve sample approached the boundary y2 = 0 of the half-plane.
class BoundaryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Time step underflow while backtracking.
class StiffnessError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace helastic
