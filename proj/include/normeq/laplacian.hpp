#pragma once

#include "normeq/problem.hpp"
#include "normeq/solvers.hpp"

namespace normeq {

// L = W - 1 v^T with W an invertible M-matrix whose row sums all equal
// |v|_1. nu = sqrt(|v|_1) is both the root bracket end and |x*|_1.
struct LaplacianDecomposition {
  Matrix l;
  Matrix w;
  Vector v;
  double nu = 0.0;
};

// Validates L (row sums vanish, tol 1e-12 per row) and v (nonnegative,
// nonzero, W = L + 1v^T an invertible M-matrix), then assembles the split.
// Throws NotLaplacianError or InvalidVError.
LaplacianDecomposition decompose(const Matrix& l, const Vector& v);

// Picks c*e_j for the first column j whose off-diagonal entries are all equal
// to -c (c > 0) and that survives decompose. Heuristic; throws
// NoUniformColumnError when no column qualifies.
Vector suggest_v(const Matrix& l);

struct DbSqrt {
  Matrix sqrt;      // principal square root
  Matrix inv_sqrt;  // its inverse
  int iterations = 0;
};

// Averaging iteration X <- (X + Y^{-1})/2, Y <- (Y + X^{-1})/2 from X = W,
// Y = I; both limits returned. Stops when |X_{k+1} - X_k|_1 <= tol*|X_{k+1}|_1.
// Throws SingularPivotError if an inversion fails, ConvergenceError at the cap.
DbSqrt db_sqrt(const Matrix& w, double tol = 1e-13, int max_iter = 100);

struct SqrtResult {
  Matrix v_sqrt;        // V = W^{1/2}
  Vector y;             // (W^{-1/2})^T v, the rank-one correction direction
  int iterations = 0;   // averaging steps spent inside db_sqrt
  double defect = 0.0;  // |(V - 1y^T)^2 - L|_1
};

// L^{1/2} = V - 1 y^T with V from db_sqrt and y = solve(V^T, v).
SqrtResult rank_one_sqrt(const LaplacianDecomposition& d, double tol = 1e-13);

// Split iterate of the binomial recurrence for (I - W1 - 1 v~^T)^{1/2},
// where L = ell(I - W1 - 1 v~^T). s_scalar tracks the uniform row sum of s.
struct BinomialState {
  Matrix w1;
  Vector v_tilde;
  double ell = 0.0;
  Matrix s;
  Vector x;
  double s_scalar = 0.0;
  int k = 0;
};

// ell = (max diagonal of W) + 1 keeps W1 = I - W/ell entrywise nonnegative.
BinomialState binomial_init(const LaplacianDecomposition& d);

// S <- (W1 + S^2)/2, x <- ((s + |x|_1)I + S^T)x/2 + v~/2, s <- (1 - |v~|_1 + s^2)/2,
// all right-hand sides taken at the old state.
void binomial_step(BinomialState& st);

struct BinomialSplit {
  Matrix s;
  Vector x;
  double s_row_sum = 0.0;
  int iterations = 0;
  double ell = 0.0;
};

// Runs the stepper until |S_{k+1}-S_k|_1 + |x_{k+1}-x_k|_1 <= tol; the limit
// satisfies sqrt(ell)*(I - S - 1x^T) = L^{1/2}. Throws ConvergenceError at the
// cap (the recurrence is linearly convergent on nondegenerate input).
BinomialSplit binomial_sqrt(const LaplacianDecomposition& d, double tol = 1e-13,
                            int max_iter = 10000);

// The equation (nu I + V^T)x - |x|_1 x = v as a ProblemInstance with
// bracket [0, nu]. Its scalar reduction is f(mu) = nu^2/(2nu - mu), so the
// root mu = nu is a double root sitting exactly on the bracket end.
ProblemInstance lap_problem(const LaplacianDecomposition& d, const Matrix& v_sqrt);

// Newton with multiplicity hard-wired to 2 and tolerance floored at 1e-11
// (the double root halves the attainable residual exponent). x converges to
// (V^T)^{-1} v = y.
SolveResult solve_lap_equation(const LaplacianDecomposition& d, const SolverConfig& cfg = {});

}  // namespace normeq
