#include "normeq/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace normeq {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::MaxIterations: return "MaxIterations";
    case SolveStatus::Diverged: return "Diverged";
    case SolveStatus::SingularPivot: return "SingularPivot";
  }
  return "unknown";
}

double residual(const ProblemInstance& p, const Vector& x) {
  const Vector ax = p.A * x;
  const double xn = norm1(x);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::abs(ax[i] - xn * x[i] - p.b[i]);
  return s;
}

namespace {

double nonneg_sum_norm(const Vector& w) {
  double least = 0.0;
  for (double x : w) least = std::min(least, x);
  if (least >= -1e-13) return sum(w);
  return norm1(w);
}

void append_note(std::string& detail, const std::string& note) {
  if (detail.find(note) != std::string::npos) return;  // once per event kind
  if (!detail.empty()) detail += "; ";
  detail += note;
}

void validate_common(const ProblemInstance& p, const SolverConfig& cfg) {
  if (cfg.tol <= 0.0) throw DomainError("solver: tol must be positive");
  if (cfg.mu0 < 0.0 || cfg.mu0 > p.beta)
    throw DomainError("solver: mu0 outside [0, beta]");
}

// Near the residual noise floor, three consecutive iterations with less than
// 10% improvement relax the target to 1e-13. Only armed below 1e-10 so a
// slow-but-steady linear iteration is not misread as stagnation.
class StagnationRelax {
 public:
  explicit StagnationRelax(double tol) : tol_eff_(tol) {}

  double tol() const { return tol_eff_; }

  void observe(double r, std::string& detail) {
    if (r <= 1e-10 && r > 0.9 * prev_)
      ++stall_;
    else
      stall_ = 0;
    prev_ = r;
    if (stall_ >= 3) force(detail);
  }

  // The iteration itself detected a hard stall (update stuck at the noise
  // floor); relax immediately instead of waiting for three observations.
  void force(std::string& detail) {
    if (tol_eff_ >= 1e-13) return;
    tol_eff_ = 1e-13;
    append_note(detail, "residual stagnated; tolerance relaxed to 1e-13");
  }

 private:
  double tol_eff_;
  double prev_ = std::numeric_limits<double>::infinity();
  int stall_ = 0;
};

}  // namespace

double resolve_tau(const ProblemInstance& p, const SolverConfig& cfg, std::string* note) {
  switch (cfg.tau_rule) {
    case TauRule::PlainFixedPoint:
      return 1.0;
    case TauRule::Fixed: {
      if (!(cfg.tau > 0.0) || cfg.tau > 2.0)
        throw DomainError("resolve_tau: tau outside (0, 2]");
      const MuFunctions mf(p);
      if (cfg.tau > mf.tau_admissible_max() && note)
        append_note(*note, "tau exceeds the admissible bound; relying on interval clamping");
      return cfg.tau;
    }
    case TauRule::OptAt: {
      const MuFunctions mf(p);
      double tau = tau_opt(mf, cfg.mu0);
      if (cfg.mu0 > 0.0) {
        const double cap = mf.tau_admissible_max();
        if (tau > cap) {
          tau = cap;
          if (note) append_note(*note, "tau clamped to the admissible bound");
        }
      }
      return tau;
    }
  }
  throw DomainError("resolve_tau: unknown rule");
}

SolveResult solve_rfpi(const ProblemInstance& p, const SolverConfig& cfg) {
  validate_common(p, cfg);
  const int max_iter = cfg.max_iter > 0 ? cfg.max_iter : 1000;

  SolveResult res;
  const double tau = resolve_tau(p, cfg, &res.detail);
  StagnationRelax relax(cfg.tol);

  double mu = cfg.mu0;
  res.mu_history.push_back(mu);
  for (int k = 1; k <= max_iter; ++k) {
    const LuFactorization lu(add_scaled_identity(p.A, -mu));
    const Vector x = lu.solve(p.b);
    const double xn = norm1(x);
    const double r = residual(p, x);
    res.residual_history.push_back(r);
    res.iterations = k;
    if (!std::isfinite(r) || !std::isfinite(xn)) {
      res.mu_history.push_back(xn);
      res.x = x;
      res.mu = xn;
      res.status = SolveStatus::Diverged;
      res.tol_used = relax.tol();
      return res;
    }
    relax.observe(r, res.detail);
    if (r <= relax.tol()) {
      res.mu_history.push_back(xn);
      res.x = x;
      res.mu = xn;
      res.status = SolveStatus::Converged;
      res.tol_used = relax.tol();
      return res;
    }
    double mu_next = tau * xn + (1.0 - tau) * mu;
    if (mu_next < 0.0) {
      mu_next = 0.0;
      append_note(res.detail, "mu clamped at 0");
    } else if (mu_next > p.beta) {
      mu_next = p.beta;
      append_note(res.detail, "mu clamped at beta");
    }
    mu = mu_next;
    res.mu_history.push_back(mu);
    res.x = x;
    res.mu = xn;
  }
  res.status = SolveStatus::MaxIterations;
  res.tol_used = relax.tol();
  return res;
}

SolveResult solve_newton(const ProblemInstance& p, const SolverConfig& cfg) {
  validate_common(p, cfg);
  if (cfg.newton_multiplicity != 1 && cfg.newton_multiplicity != 2)
    throw DomainError("solve_newton: multiplicity must be 1 or 2");
  const int max_iter = cfg.max_iter > 0 ? cfg.max_iter : 100;

  SolveResult res;
  StagnationRelax relax(cfg.tol);
  double mu = cfg.mu0;
  res.mu_history.push_back(mu);
  for (int k = 1; k <= max_iter; ++k) {
    const LuFactorization lu(add_scaled_identity(p.A, -mu));
    const Vector x = lu.solve(p.b);
    const double fval = nonneg_sum_norm(x);
    const double r = residual(p, x);
    res.residual_history.push_back(r);
    res.iterations = k;
    res.x = x;
    res.mu = norm1(x);
    if (!std::isfinite(r)) {
      res.mu_history.push_back(res.mu);
      res.status = SolveStatus::Diverged;
      res.tol_used = relax.tol();
      return res;
    }
    relax.observe(r, res.detail);
    if (r <= relax.tol()) {
      // |x|_1 = f(mu) >= mu below the root; the max absorbs the rounding case
      // where the final iterate landed a few ulp past it.
      res.mu_history.push_back(std::max(mu, res.mu));
      res.status = SolveStatus::Converged;
      res.tol_used = relax.tol();
      return res;
    }
    const double fp = nonneg_sum_norm(lu.solve(x));
    const double gp = fp - 1.0;
    if (std::abs(gp) < 1e-14) {
      if (cfg.newton_multiplicity == 1)
        throw DerivativeDegenerateError("solve_newton: |g'| below 1e-14");
      relax.force(res.detail);
      if (r <= relax.tol()) {
        res.mu_history.push_back(std::max(mu, res.mu));
        res.status = SolveStatus::Converged;
        res.tol_used = relax.tol();
        return res;
      }
      append_note(res.detail, "derivative degenerate at the double root");
      res.mu_history.push_back(mu);
      break;
    }
    const double g = fval - mu;
    double mu_next = mu - cfg.newton_multiplicity * g / gp;
    if (mu_next > p.beta) {
      mu_next = p.beta;
      append_note(res.detail, "mu clamped at beta");
    }
    if (mu_next < mu) {
      // Exact updates never decrease; a dip is rounding noise in g.
      mu_next = mu;
      append_note(res.detail, "monotone clamp engaged at the noise floor");
    }
    if (mu_next == mu) {
      relax.force(res.detail);
      if (r <= relax.tol()) {
        res.mu_history.push_back(std::max(mu, res.mu));
        res.status = SolveStatus::Converged;
        res.tol_used = relax.tol();
        return res;
      }
      append_note(res.detail, "no further progress possible");
      res.mu_history.push_back(mu);
      break;
    }
    mu = mu_next;
    res.mu_history.push_back(mu);
  }
  res.status = SolveStatus::MaxIterations;
  res.tol_used = relax.tol();
  return res;
}

SdaState sda_init(const ProblemInstance& p) {
  const LuFactorization lu(p.A);
  SdaState s;
  s.F = lu.inverse();
  s.u = s.F * p.b;
  s.v = column_sums(s.F);  // A^{-T} 1 = column sums of A^{-1}
  s.c = sum(s.u);          // 1^T A^{-1} b
  s.k = 0;
  return s;
}

void sda_step(SdaState& s) {
  const std::size_t n = s.u.size();
  double vtu = 0.0;
  for (std::size_t i = 0; i < n; ++i) vtu += s.v[i] * s.u[i];
  const double d = 1.0 - vtu;
  if (d <= 1e-14) throw SingularPivotError("sda_step: 1 - v'u at or below 1e-14");
  if (s.c == 0.0) {
    // Exact fixed point: u already solves the equation, remaining updates
    // only touch F, whose weight |c| is zero.
    ++s.k;
    return;
  }
  const Vector fu = s.F * s.u;
  const Vector ftv = transpose_times(s.F, s.v);
  const double scale = s.c / d;

  Matrix f_next = s.F * s.F;
  const double inv_d = 1.0 / d;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) f_next(i, j) += inv_d * fu[i] * ftv[j];

  for (std::size_t i = 0; i < n; ++i) {
    s.u[i] += scale * fu[i];
    s.v[i] += scale * ftv[i];
  }
  s.c = s.c * s.c / d;
  s.F = std::move(f_next);
  ++s.k;
}

SolveResult solve_sda(const ProblemInstance& p, const SolverConfig& cfg) {
  validate_common(p, cfg);
  const int max_iter = cfg.max_iter > 0 ? cfg.max_iter : 64;

  SolveResult res;
  StagnationRelax relax(cfg.tol);
  SdaState s = sda_init(p);
  res.mu_history.push_back(norm1(s.u));
  if (residual(p, s.u) <= relax.tol()) {
    res.x = s.u;
    res.mu = norm1(s.u);
    res.iterations = 0;
    res.status = SolveStatus::Converged;
    res.tol_used = relax.tol();
    return res;
  }
  for (int k = 1; k <= max_iter; ++k) {
    try {
      sda_step(s);
    } catch (const SingularPivotError&) {
      res.x = s.u;
      res.mu = norm1(s.u);
      res.status = SolveStatus::SingularPivot;
      res.tol_used = relax.tol();
      append_note(res.detail, "doubling pivot became singular");
      return res;
    }
    const double xn = norm1(s.u);
    const double r = residual(p, s.u);
    res.residual_history.push_back(r);
    res.mu_history.push_back(xn);
    res.iterations = k;
    res.x = s.u;
    res.mu = xn;
    if (!std::isfinite(r) || !std::isfinite(xn)) {
      res.status = SolveStatus::Diverged;
      res.tol_used = relax.tol();
      return res;
    }
    relax.observe(r, res.detail);
    if (r <= relax.tol()) {
      res.status = SolveStatus::Converged;
      res.tol_used = relax.tol();
      return res;
    }
  }
  res.status = SolveStatus::MaxIterations;
  res.tol_used = relax.tol();
  return res;
}

}  // namespace normeq
