#pragma once

#include <stdexcept>
#include <string>

namespace sgnmod {

// Argument outside the mathematical domain of a function (elliptic modulus,
// characteristic, solver parameters).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Root triple violating 0 < h0 < h1 < h2.
class InvalidRootsError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Root triple that is ordered but collapses onto the soliton or
// zero-amplitude limit.
class DegenerateRootsError : public InvalidRootsError {
  public:
    using InvalidRootsError::InvalidRootsError;
};

// Derivative formulas for Pi divide by (k^2 - n).
class SingularConfigurationError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

class QuadratureError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Leading coefficient of det(B - lambda A) vanishes.
class DegeneratePencilError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Time-domain solver failures: loss of positivity or a failed linear solve.
class SolverError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class PositivityError : public SolverError {
  public:
    using SolverError::SolverError;
};

} // namespace sgnmod
