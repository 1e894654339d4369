#include "normeq/perturbation.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <variant>

#include "normeq/errors.hpp"
#include "normeq/rng.hpp"

namespace normeq {

PerturbationBound bound(const ProblemInstance& p, const Vector& x, double da_norm,
                        double db_norm) {
  if (x.size() != p.size())
    throw DimensionError("bound: x does not match the instance size");
  if (da_norm < 0.0 || db_norm < 0.0)
    throw DomainError("bound: perturbation norms must be nonnegative");

  PerturbationBound out;
  out.da_norm = da_norm;
  out.db_norm = db_norm;
  out.mu_x = norm1(x);
  out.inv_norm = norm1(LuFactorization(add_scaled_identity(p.A, -out.mu_x)).inverse());

  const double denom = 1.0 - out.mu_x * out.inv_norm;
  if (denom <= 0.0)
    throw DomainError("bound: mu_x * |(A - mu_x I)^{-1}|_1 >= 1; x is not a solution "
                      "of an admissible instance");
  out.kappa = out.inv_norm * (db_norm + out.mu_x * da_norm) / denom;
  return out;
}

namespace {

// Entrywise relative bump c -> c * (1 + eps * u), u uniform in [-1, 1].
// Signs never flip for eps <= 1, so nonnegativity of the data is preserved
// and only the admission margins are at stake.
double bump(double c, double eps, Xoshiro256pp& rng) {
  return c * (1.0 + eps * rng.uniform(-1.0, 1.0));
}

ProblemInstance draw_perturbed(const ProblemInstance& p, double eps, Xoshiro256pp& rng,
                               int& rejected) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    try {
      Vector b = p.b;
      for (auto& e : b) e = bump(e, eps, rng);
      if (p.is_toeplitz()) {
        LaurentSymbol a = std::get<ToeplitzOrigin>(p.origin).symbol;
        for (auto& c : a.coeffs) c = bump(c, eps, rng);
        return build_toeplitz_problem(make_symbol(a.lo, a.coeffs), std::move(b), true);
      }
      Matrix m = std::get<DenseOrigin>(p.origin).m;
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = bump(m(i, j), eps, rng);
      return build_dense_problem(std::move(m), std::move(b), true);
    } catch (const InvalidProblemError&) {
      ++rejected;
    }
  }
  throw RejectionExhaustedError(
      "verify_bound: 1000 draws failed the strict validity conditions");
}

Vector solve_for(const ProblemInstance& p) {
  SolveResult r = solve_newton(p, SolverConfig{});
  if (r.status != SolveStatus::Converged)
    throw ConvergenceError(std::string("verify_bound: solver did not converge (") +
                           to_string(r.status) + ")");
  return r.x;
}

}  // namespace

PerturbationReport verify_bound(const ProblemInstance& p, double eps, int trials,
                                std::uint64_t seed) {
  if (!(eps >= 0.0 && eps <= 1e-4))
    throw DomainError("verify_bound: eps must lie in [0, 1e-4]");
  if (trials <= 0) throw DomainError("verify_bound: trials must be positive");
  if (p.is_laplacian())
    throw DomainError("verify_bound: requires a banded or dense instance");

  PerturbationReport report;
  report.eps = eps;
  report.slack = 1.0 + 100.0 * eps;
  report.seed = seed;
  report.trials.reserve(static_cast<std::size_t>(trials));

  const Vector x = solve_for(p);
  const Xoshiro256pp root(seed);
  for (int t = 0; t < trials; ++t) {
    Xoshiro256pp stream = root.split(static_cast<std::uint64_t>(t));
    ProblemInstance pert = draw_perturbed(p, eps, stream, report.rejected_draws);

    PerturbationTrial trial;
    trial.da_norm = norm1(pert.A - p.A);
    trial.db_norm = norm1(pert.b - p.b);
    trial.dx_norm = norm1(solve_for(pert) - x);
    trial.kappa = bound(p, x, trial.da_norm, trial.db_norm).kappa;
    if (trial.kappa > 0.0)
      trial.ratio = trial.dx_norm / trial.kappa;
    else
      trial.ratio = trial.dx_norm == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    trial.flagged = trial.ratio > report.slack;
    report.trials.push_back(trial);
  }
  return report;
}

}  // namespace normeq
