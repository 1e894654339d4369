#include "normeq/scalar_analysis.hpp"

#include <cmath>
#include <limits>

namespace normeq {

namespace {

// Solutions of the shifted systems are nonnegative in exact arithmetic, so
// the 1-norm is the plain entry sum. Falls back to absolute values if
// rounding pushed an entry materially negative.
double nonneg_sum_norm(const Vector& w) {
  double least = 0.0;
  for (double x : w) least = std::min(least, x);
  if (least >= -1e-13) return sum(w);
  return norm1(w);
}

}  // namespace

MuFunctions::MuFunctions(const ProblemInstance& p) : p_(&p), beta_(p.beta) {
  f0_ = f(0.0);
  fbeta_ = f(beta_);
}

double MuFunctions::f(double mu) const {
  if (mu < 0.0 || mu > beta_)
    throw DomainError("f: mu outside [0, beta]");
  const LuFactorization lu(add_scaled_identity(p_->A, -mu));
  return nonneg_sum_norm(lu.solve(p_->b));
}

double MuFunctions::fprime(double mu) const {
  if (mu < 0.0 || mu > beta_)
    throw DomainError("fprime: mu outside [0, beta]");
  const LuFactorization lu(add_scaled_identity(p_->A, -mu));
  const Vector w = lu.solve(p_->b);
  return nonneg_sum_norm(lu.solve(w));
}

double MuFunctions::tau_admissible_max() const {
  double t = 2.0;
  if (f0_ > 0.0) t = std::min(t, beta_ / f0_);
  const double gap = beta_ - fbeta_;
  if (gap > 0.0) t = std::min(t, beta_ / gap);
  return t;
}

double tau_opt(const MuFunctions& mf, double mu0) {
  const double fp = mf.fprime(mu0);
  if (fp >= 1.0 - 1e-12)
    throw DegenerateTauError("tau_opt: f' too close to 1");
  return 1.0 / (1.0 - fp);
}

double bisect_mu_star(const MuFunctions& mf, double tol, int max_halvings) {
  const double scale = std::max(1.0, mf.f_at_zero());
  double lo = 0.0, hi = mf.beta();
  double glo = mf.g(lo), ghi = mf.g(hi);
  if (glo < 0.0) throw BracketError("bisect: g(0) < 0");
  if (ghi > 0.0) throw BracketError("bisect: g(beta) > 0");
  double mid = 0.5 * (lo + hi);
  for (int k = 0; k < max_halvings; ++k) {
    mid = 0.5 * (lo + hi);
    const double gmid = mf.g(mid);
    if (hi - lo <= tol && std::abs(gmid) <= tol * scale) return mid;
    if (gmid >= 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi <= lo) break;  // interval collapsed to adjacent doubles
  }
  return 0.5 * (lo + hi);
}

}  // namespace normeq
