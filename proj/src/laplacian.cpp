#include "normeq/laplacian.hpp"

#include <cmath>
#include <utility>

namespace normeq {

namespace {

Vector ones(std::size_t n) { return Vector(n, 1.0); }

}  // namespace

LaplacianDecomposition decompose(const Matrix& l, const Vector& v) {
  const std::size_t n = l.rows();
  if (n == 0 || l.cols() != n) throw DimensionError("decompose: L must be square and nonempty");
  if (v.size() != n) throw DimensionError("decompose: v must match L");

  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += l(i, j);
    if (std::abs(row) > 1e-12)
      throw NotLaplacianError("decompose: row sums of L must vanish");
  }
  if (!is_nonneg(v)) throw InvalidVError("decompose: v must be nonnegative");
  if (norm1(v) == 0.0) throw InvalidVError("decompose: v must be nonzero");

  Matrix w = l + outer(ones(n), v);
  if (!m_matrix_check(w))
    throw InvalidVError("decompose: L + 1v^T fails the M-matrix dominance test");
  try {
    LuFactorization probe(w);
  } catch (const SingularMatrixError&) {
    throw InvalidVError("decompose: L + 1v^T is singular");
  }

  LaplacianDecomposition d;
  d.l = l;
  d.w = std::move(w);
  d.v = v;
  d.nu = std::sqrt(norm1(v));
  return d;
}

Vector suggest_v(const Matrix& l) {
  const std::size_t n = l.rows();
  for (std::size_t j = 0; j < n; ++j) {
    double c = 0.0;
    bool uniform = n > 1;
    bool first = true;
    for (std::size_t i = 0; i < n && uniform; ++i) {
      if (i == j) continue;
      if (first) {
        c = -l(i, j);
        first = false;
      } else if (std::abs(-l(i, j) - c) > 1e-12) {
        uniform = false;
      }
    }
    if (!uniform || c <= 0.0) continue;
    Vector v(n, 0.0);
    v[j] = c;
    try {
      decompose(l, v);
      return v;
    } catch (const Error&) {
      // candidate column produced an invalid split; keep scanning
    }
  }
  throw NoUniformColumnError("suggest_v: no column with uniform negative off-diagonal");
}

DbSqrt db_sqrt(const Matrix& w, double tol, int max_iter) {
  const std::size_t n = w.rows();
  if (n == 0 || w.cols() != n) throw DimensionError("db_sqrt: matrix must be square");
  if (tol <= 0.0) throw DomainError("db_sqrt: tol must be positive");

  // Idempotent input is its own root; catches W = I without an iteration.
  if (norm1(w * w - w) <= tol * norm1(w) && norm1(w) > 0.0)
    return {w, Matrix::identity(n), 0};

  Matrix x = w;
  Matrix y = Matrix::identity(n);
  for (int k = 1; k <= max_iter; ++k) {
    Matrix xi, yi;
    try {
      yi = LuFactorization(y).inverse();
      xi = LuFactorization(x).inverse();
    } catch (const SingularMatrixError&) {
      throw SingularPivotError("db_sqrt: iterate became singular");
    }
    Matrix xn = 0.5 * (x + yi);
    Matrix yn = 0.5 * (y + xi);
    const double delta = norm1(xn - x);
    x = std::move(xn);
    y = std::move(yn);
    if (delta <= tol * norm1(x)) return {std::move(x), std::move(y), k};
  }
  throw ConvergenceError("db_sqrt: no convergence within the iteration cap");
}

SqrtResult rank_one_sqrt(const LaplacianDecomposition& d, double tol) {
  DbSqrt db = db_sqrt(d.w, tol);
  Vector y = LuFactorization(transpose(db.sqrt)).solve(d.v);

  const Matrix half = db.sqrt - outer(ones(d.v.size()), y);
  SqrtResult r;
  r.defect = norm1(half * half - d.l);
  r.v_sqrt = std::move(db.sqrt);
  r.y = std::move(y);
  r.iterations = db.iterations;
  return r;
}

BinomialState binomial_init(const LaplacianDecomposition& d) {
  const std::size_t n = d.v.size();
  double maxdiag = 0.0;
  for (std::size_t i = 0; i < n; ++i) maxdiag = std::max(maxdiag, d.w(i, i));
  const double ell = maxdiag + 1.0;

  BinomialState st;
  st.ell = ell;
  st.w1 = add_scaled_identity((-1.0 / ell) * d.w, 1.0);
  st.v_tilde = (1.0 / ell) * d.v;
  st.s = Matrix(n, n);
  st.x = Vector(n, 0.0);
  st.s_scalar = 0.0;
  st.k = 0;
  return st;
}

void binomial_step(BinomialState& st) {
  const std::size_t n = st.x.size();
  Matrix s_next = 0.5 * (st.w1 + st.s * st.s);

  const Vector stx = transpose_times(st.s, st.x);
  const double coef = st.s_scalar + norm1(st.x);
  Vector x_next(n);
  for (std::size_t i = 0; i < n; ++i)
    x_next[i] = 0.5 * (coef * st.x[i] + stx[i]) + 0.5 * st.v_tilde[i];

  st.s_scalar = 0.5 * (1.0 - norm1(st.v_tilde) + st.s_scalar * st.s_scalar);
  st.s = std::move(s_next);
  st.x = std::move(x_next);
  ++st.k;
}

BinomialSplit binomial_sqrt(const LaplacianDecomposition& d, double tol, int max_iter) {
  if (tol <= 0.0) throw DomainError("binomial_sqrt: tol must be positive");
  BinomialState st = binomial_init(d);
  for (int k = 1; k <= max_iter; ++k) {
    const Matrix s_prev = st.s;
    const Vector x_prev = st.x;
    binomial_step(st);
    const double delta = norm1(st.s - s_prev) + norm1(st.x - x_prev);
    if (delta <= tol)
      return {std::move(st.s), std::move(st.x), st.s_scalar, k, st.ell};
  }
  throw ConvergenceError("binomial_sqrt: no convergence within the iteration cap");
}

ProblemInstance lap_problem(const LaplacianDecomposition& d, const Matrix& v_sqrt) {
  ProblemInstance p;
  p.A = add_scaled_identity(transpose(v_sqrt), d.nu);
  p.b = d.v;
  p.beta = d.nu;
  p.origin = LaplacianOrigin{d.nu, v_sqrt, d.l, d.v};
  p.validation.strict = false;
  p.validation.beta = d.nu;
  p.validation.note =
      "bracket [0, nu] from the closed-form reduction; the root at nu is a "
      "boundary double root, outside the strict norm conditions";
  return p;
}

SolveResult solve_lap_equation(const LaplacianDecomposition& d, const SolverConfig& cfg) {
  const SqrtResult r = rank_one_sqrt(d);
  const ProblemInstance p = lap_problem(d, r.v_sqrt);

  SolverConfig c = cfg;
  c.newton_multiplicity = 2;
  c.tol = std::max(cfg.tol, 1e-11);
  return solve_newton(p, c);
}

}  // namespace normeq
