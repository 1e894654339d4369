#pragma once

#include "normeq/problem.hpp"

namespace normeq {

// Scalar reduction of the vector equation: f(mu) = |(A - mu I)^{-1} b|_1 on
// the domain [0, beta]. Holds a pointer to the instance; the instance must
// outlive this object.
class MuFunctions {
 public:
  explicit MuFunctions(const ProblemInstance& p);

  double beta() const { return beta_; }

  // One factorization, one solve. Throws DomainError outside [0, beta].
  double f(double mu) const;
  // |(A - mu I)^{-2} b|_1: one factorization, two sequential solves.
  double fprime(double mu) const;
  double g(double mu) const { return f(mu) - mu; }

  // Secant slopes toward the interval ends; monotone on the two sides of the
  // root. Exposed for property testing only.
  double g1(double mu) const { return (beta_ - mu) / g(mu); }
  double g2(double mu) const { return -mu / g(mu); }

  // min{2, beta/|A^{-1}b|_1, beta/(beta - |(A - beta I)^{-1}b|_1)}; the
  // no-load case b = 0 collapses it to 1.
  double tau_admissible_max() const;

  double f_at_zero() const { return f0_; }     // |A^{-1} b|_1
  double f_at_beta() const { return fbeta_; }  // |(A - beta I)^{-1} b|_1

  const ProblemInstance& problem() const { return *p_; }

 private:
  const ProblemInstance* p_;
  double beta_ = 0.0;
  double f0_ = 0.0;
  double fbeta_ = 0.0;
};

// 1 / (1 - f'(mu0)). Throws DegenerateTauError when f'(mu0) >= 1 - 1e-12.
double tau_opt(const MuFunctions& mf, double mu0 = 0.0);

// Bisection for the root of g on [0, beta]. Throws BracketError when the
// bracket signs are wrong (g(0) < 0 or g(beta) > 0). The result mu satisfies
// |g(mu)| <= tol * max(1, f(0)) with bracket width <= tol.
double bisect_mu_star(const MuFunctions& mf, double tol = 1e-14, int max_halvings = 200);

}  // namespace normeq
