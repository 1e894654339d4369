#pragma once

#include <string>
#include <vector>

#include "normeq/problem.hpp"
#include "normeq/scalar_analysis.hpp"

namespace normeq {

enum class SolveStatus { Converged, MaxIterations, Diverged, SingularPivot };

const char* to_string(SolveStatus s);

// Converged results satisfy |mu - |x|_1| <= 1e-12 and pair x with the mu the
// residual was evaluated at.
struct SolveResult {
  Vector x;
  double mu = 0.0;
  int iterations = 0;
  std::vector<double> residual_history;  // one entry per iteration
  std::vector<double> mu_history;        // mu_0, mu_1, ...; length iterations + 1
  SolveStatus status = SolveStatus::MaxIterations;
  std::string detail;     // clamping, tau notes, tolerance relaxation
  double tol_used = 0.0;  // effective tolerance after any relaxation
};

enum class TauRule {
  PlainFixedPoint,  // tau = 1
  Fixed,            // tau from config
  OptAt,            // tau = 1 / (1 - f'(mu0)), clamped to admissible for mu0 > 0
};

struct SolverConfig {
  double tol = 1e-15;
  // 0 picks the per-solver default: 1000 fixed point, 100 Newton, 64 doubling.
  int max_iter = 0;
  TauRule tau_rule = TauRule::PlainFixedPoint;
  double tau = 1.0;  // used by TauRule::Fixed; must lie in (0, 2]
  double mu0 = 0.0;
  int newton_multiplicity = 1;  // 2 for the Laplacian double root
};

// State of the doubling recurrence. alpha and beta_k are the certified
// contraction monitors.
struct SdaState {
  double c = 0.0;
  Vector u;
  Vector v;
  Matrix F;
  int k = 0;

  double alpha() const { return norm1(u) * norm_inf(v); }   // = |u v^T|_1
  double beta_k() const { return std::abs(c) * norm1(F); }  // = |c F|_1
};

// |A x - |x|_1 x - b|_1.
double residual(const ProblemInstance& p, const Vector& x);

// Relaxed functional iteration x <- (A - mu I)^{-1} b, mu <- tau |x|_1 + (1 - tau) mu.
SolveResult solve_rfpi(const ProblemInstance& p, const SolverConfig& cfg = {});

// Scalar Newton on g(mu) = f(mu) - mu, started at cfg.mu0 (default 0).
SolveResult solve_newton(const ProblemInstance& p, const SolverConfig& cfg = {});

// c0 = 1^T A^{-1} b, u0 = A^{-1} b, v0 = A^{-T} 1, F0 = A^{-1}.
SdaState sda_init(const ProblemInstance& p);

// One doubling step in place. Throws SingularPivotError when 1 - v^T u <= 1e-14.
void sda_step(SdaState& s);

SolveResult solve_sda(const ProblemInstance& p, const SolverConfig& cfg = {});

// Resolves the relaxation parameter for a config; notes clamping into *note.
double resolve_tau(const ProblemInstance& p, const SolverConfig& cfg, std::string* note);

}  // namespace normeq
