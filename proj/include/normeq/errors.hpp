#pragma once

#include <stdexcept>
#include <string>

namespace normeq {

// Base class for every failure this library reports.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operand shapes do not line up.
struct DimensionError : Error {
  using Error::Error;
};

// A pivot fell below the factorization threshold.
struct SingularMatrixError : Error {
  using Error::Error;
};

// The doubling recurrence hit a non-invertible rank-one pivot (1 - v'u ~ 0).
struct SingularPivotError : Error {
  using Error::Error;
};

// mu outside [0, beta], or an operand outside its admissible set.
struct DomainError : Error {
  using Error::Error;
};

// Root bracketing failed: g(0) < 0 or g(beta) > 0.
struct BracketError : Error {
  using Error::Error;
};

// f'(mu0) too close to 1 for the relaxation formula.
struct DegenerateTauError : Error {
  using Error::Error;
};

// |g'| below threshold where Newton needs to divide by it.
struct DerivativeDegenerateError : Error {
  using Error::Error;
};

// An iteration or sampling refinement ran out of budget.
struct ConvergenceError : Error {
  using Error::Error;
};

// Matrix is not a graph Laplacian (row sums off zero, sign pattern wrong).
struct NotLaplacianError : Error {
  using Error::Error;
};

// Supplied v does not make W = L + 1 v^T an invertible M-matrix.
struct InvalidVError : Error {
  using Error::Error;
};

// No column of L has all off-diagonal entries equal, so no v can be suggested.
struct NoUniformColumnError : Error {
  using Error::Error;
};

// Rejection sampling could not produce an admissible perturbation.
struct RejectionExhaustedError : Error {
  using Error::Error;
};

// File / format problems (problem JSON, edge lists, CSV output).
struct IoError : Error {
  using Error::Error;
};

}  // namespace normeq
