#pragma once

#include <cstdint>
#include <vector>

#include "normeq/problem.hpp"
#include "normeq/solvers.hpp"

namespace normeq {

// First-order sensitivity of the solution to (dA, db), evaluated at a
// converged x. The denominator 1 - mu_x*inv_norm stays positive whenever x
// solves a strictly admissible instance (mu_x < beta).
struct PerturbationBound {
  double kappa = 0.0;     // inv_norm*(db_norm + mu_x*da_norm) / (1 - mu_x*inv_norm)
  double mu_x = 0.0;      // |x|_1
  double inv_norm = 0.0;  // |(A - mu_x I)^{-1}|_1, from the explicit inverse
  double da_norm = 0.0;
  double db_norm = 0.0;
};

PerturbationBound bound(const ProblemInstance& p, const Vector& x, double da_norm,
                        double db_norm);

struct PerturbationTrial {
  double da_norm = 0.0;
  double db_norm = 0.0;
  double dx_norm = 0.0;  // |x' - x|_1 from re-solving the perturbed instance
  double kappa = 0.0;
  double ratio = 0.0;  // dx_norm / kappa, 0 when both are zero
  bool flagged = false;
};

struct PerturbationReport {
  double eps = 0.0;
  double slack = 0.0;  // ratios above this (= 1 + 100*eps) get flagged
  std::uint64_t seed = 0;
  int rejected_draws = 0;
  std::vector<PerturbationTrial> trials;

  bool all_passed() const {
    for (const auto& t : trials)
      if (t.flagged) return false;
    return true;
  }
};

// Draws entrywise-relative perturbations of the instance data (symbol and b
// for the banded form, M and b for the dense form), rebuilds strictly, and
// re-solves. Draws failing strict admission are rejected and redrawn, up to
// 1000 per trial (RejectionExhaustedError beyond that). eps must lie in
// [0, 1e-4] so the first-order regime applies (eps = 0 degenerates to exact
// rebuilds, reported as passing); trials use independent sub-streams of seed.
PerturbationReport verify_bound(const ProblemInstance& p, double eps, int trials,
                                std::uint64_t seed);

}  // namespace normeq
