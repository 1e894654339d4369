#include "normeq/problem.hpp"

#include <cmath>
#include <utility>

namespace normeq {

bool m_matrix_check(const Matrix& a, double offdiag_tol) {
  const std::size_t n = a.rows();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s = std::max(s, a(i, i));
  if (s <= 0.0) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && a(i, j) > offdiag_tol) return false;
  // B = sI - A is then nonnegative up to offdiag_tol; either norm of B below
  // s certifies the spectral radius bound.
  const Matrix b = add_scaled_identity(-1.0 * a, s);
  return norm1(b) < s || norm_inf(b) < s;
}

namespace {

// The fixed admission set. offdiag_ok is origin specific: coefficientwise
// a >= 0 for symbols, M >= 0 for dense data; both make the off-diagonals of
// A nonpositive.
ValidationReport run_checks(const Matrix& a, const Vector& b, double symbol_norm, double beta,
                            bool strict, bool offdiag_ok, const char* offdiag_note) {
  ValidationReport report;
  report.strict = strict;
  report.beta = beta;
  const double b_norm = norm1(b);

  report.checks.push_back(
      {"nonneg_b", is_nonneg(b), b_norm, "entries of b must be nonnegative"});
  report.checks.push_back({"nonneg_offdiag", offdiag_ok, 0.0, offdiag_note});
  report.checks.push_back({"norm_condition_sum", symbol_norm + b_norm < 1.0,
                           symbol_norm + b_norm, "|a|_W + |b|_1 < 1"});
  report.checks.push_back({"norm_condition_square", b_norm < beta * beta, b_norm,
                           "|b|_1 < (1 - |a|_W)^2"});
  report.checks.push_back({"m_matrix", m_matrix_check(a), 0.0,
                           "A must pass the M-matrix dominance test"});
  return report;
}

}  // namespace

ProblemInstance build_toeplitz_problem(const LaurentSymbol& a, Vector b, bool strict) {
  if (b.empty()) throw DimensionError("build_toeplitz_problem: b must be nonempty");
  const double a_norm = wiener_norm(a);
  const double beta = 1.0 - a_norm;
  const std::size_t n = b.size();
  Matrix mat = add_scaled_identity(-1.0 * toeplitz_section(a, n), 2.0 - a_norm);
  // Tiny negative coefficients are interpolation noise, same budget as the
  // M-matrix off-diagonal tolerance.
  ValidationReport report = run_checks(mat, b, a_norm, beta, strict, is_nonneg(a, 1e-14),
                                       "symbol coefficients must be >= 0");
  if (strict && !report.all_passed()) throw InvalidProblemError(std::move(report));
  ProblemInstance p;
  p.A = std::move(mat);
  p.b = std::move(b);
  p.beta = beta;
  p.origin = ToeplitzOrigin{a};
  p.validation = std::move(report);
  return p;
}

ProblemInstance build_dense_problem(Matrix m, Vector b, bool strict) {
  if (m.rows() != m.cols() || m.rows() != b.size())
    throw DimensionError("build_dense_problem: M must be square and match b");
  const double m_norm = norm1(m);
  const double beta = 1.0 - m_norm;
  Matrix mat = add_scaled_identity(-1.0 * m, 2.0 - m_norm);
  ValidationReport report =
      run_checks(mat, b, m_norm, beta, strict, is_nonneg(m), "entries of M must be >= 0");
  if (strict && !report.all_passed()) throw InvalidProblemError(std::move(report));
  ProblemInstance p;
  p.A = std::move(mat);
  p.b = std::move(b);
  p.beta = beta;
  p.origin = DenseOrigin{std::move(m)};
  p.validation = std::move(report);
  return p;
}

}  // namespace normeq
