#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "normeq/linalg.hpp"
#include "normeq/symbol.hpp"

namespace normeq {

// One named admission check. The set of names is fixed:
// nonneg_b, nonneg_offdiag, norm_condition_sum, norm_condition_square, m_matrix.
struct ValidationCheck {
  std::string name;
  bool passed = false;
  double value = 0.0;  // the quantity the check compared, for reporting
  std::string note;
};

struct ValidationReport {
  bool strict = true;
  double beta = 0.0;
  std::vector<ValidationCheck> checks;
  std::string note;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  const ValidationCheck* find(std::string_view name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

// Strict admission failed; the report says which check tripped.
struct InvalidProblemError : Error {
  explicit InvalidProblemError(ValidationReport r)
      : Error("problem rejected: " + describe(r)), report(std::move(r)) {}
  ValidationReport report;

 private:
  static std::string describe(const ValidationReport& r) {
    std::string s;
    for (const auto& c : r.checks)
      if (!c.passed) s += (s.empty() ? "" : ", ") + c.name;
    return s.empty() ? "unknown" : s;
  }
};

struct ToeplitzOrigin {
  LaurentSymbol symbol;
};
struct DenseOrigin {
  Matrix m;
};
struct LaplacianOrigin {
  double nu = 0.0;
  Matrix v_sqrt;  // V with A = nu I + V^T
  Matrix l;       // the Laplacian itself
  Vector v;       // rank-one direction, equals b
};
using ProblemOrigin = std::variant<ToeplitzOrigin, DenseOrigin, LaplacianOrigin>;

// The equation A x - |x|_1 x = b together with where A came from.
struct ProblemInstance {
  Matrix A;
  Vector b;
  double beta = 0.0;  // root bracket is [0, beta]
  ProblemOrigin origin;
  ValidationReport validation;

  std::size_t size() const { return b.size(); }
  bool is_toeplitz() const { return std::holds_alternative<ToeplitzOrigin>(origin); }
  bool is_dense() const { return std::holds_alternative<DenseOrigin>(origin); }
  bool is_laplacian() const { return std::holds_alternative<LaplacianOrigin>(origin); }
};

// Off-diagonals <= tol in magnitude when positive, and the dominance test
// |sI - A| < s (s = max diagonal) in either the 1-norm or the inf-norm.
bool m_matrix_check(const Matrix& a, double offdiag_tol = 1e-14);

// A = (2 - |a|_W) I - T_n(a), beta = 1 - |a|_W, n = b.size().
// strict: throws InvalidProblemError unless every admission check passes.
ProblemInstance build_toeplitz_problem(const LaurentSymbol& a, Vector b, bool strict = true);

// A = (2 - |M|_1) I - M, beta = 1 - |M|_1.
ProblemInstance build_dense_problem(Matrix m, Vector b, bool strict = true);

}  // namespace normeq
