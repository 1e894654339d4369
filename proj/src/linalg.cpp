#include "normeq/linalg.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace normeq {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DimensionError(what);
}

constexpr double kPivotFloor = 1e-300;

}  // namespace

double norm1(const Vector& v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

double norm_inf(const Vector& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

double sum(const Vector& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

double norm1(const Matrix& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) col += std::abs(m(i, j));
    best = std::max(best, col);
  }
  return best;
}

double norm_inf(const Matrix& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) row += std::abs(m(i, j));
    best = std::max(best, row);
  }
  return best;
}

bool is_nonneg(const Vector& v, double tol) {
  for (double x : v)
    if (x < -tol) return false;
  return true;
}

bool is_nonneg(const Matrix& m, double tol) {
  for (double x : m.data())
    if (x < -tol) return false;
  return true;
}

Vector operator+(const Vector& a, const Vector& b) {
  require(a.size() == b.size(), "vector sizes differ");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vector operator-(const Vector& a, const Vector& b) {
  require(a.size() == b.size(), "vector sizes differ");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vector operator*(double s, const Vector& v) {
  Vector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix shapes differ");
  Matrix r = a;
  for (std::size_t i = 0; i < r.data().size(); ++i) r.data()[i] += b.data()[i];
  return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix shapes differ");
  Matrix r = a;
  for (std::size_t i = 0; i < r.data().size(); ++i) r.data()[i] -= b.data()[i];
  return r;
}

Matrix operator*(double s, const Matrix& m) {
  Matrix r = m;
  for (double& x : r.data()) x *= s;
  return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), "inner dimensions differ");
  Matrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* ri = r.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const double* bk = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) ri[j] += aik * bk[j];
    }
  }
  return r;
}

Vector operator*(const Matrix& m, const Vector& v) {
  require(m.cols() == v.size(), "matrix-vector dimensions differ");
  Vector r(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double* ri = m.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += ri[j] * v[j];
    r[i] = s;
  }
  return r;
}

Matrix transpose(const Matrix& m) {
  Matrix r(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = m(i, j);
  return r;
}

Matrix add_scaled_identity(Matrix a, double s) {
  require(a.rows() == a.cols(), "matrix not square");
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) += s;
  return a;
}

Matrix outer(const Vector& u, const Vector& v) {
  Matrix r(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r(i, j) = u[i] * v[j];
  return r;
}

Vector transpose_times(const Matrix& m, const Vector& v) {
  require(m.rows() == v.size(), "matrix-vector dimensions differ");
  Vector r(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double* ri = m.row(i);
    const double vi = v[i];
    if (vi == 0.0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] += ri[j] * vi;
  }
  return r;
}

Vector column_sums(const Matrix& m) {
  Vector r(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double* ri = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] += ri[j];
  }
  return r;
}

LuFactorization::LuFactorization(Matrix m) : m_(m), lu_(std::move(m)) {
  require(lu_.rows() == lu_.cols(), "matrix not square");
  const std::size_t n = lu_.rows();
  m_norm1_ = norm1(m_);
  piv_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double cand = std::abs(lu_(i, k));
      if (cand > best) {
        best = cand;
        p = i;
      }
    }
    if (best < kPivotFloor) throw SingularMatrixError("pivot below threshold");
    piv_[k] = static_cast<int>(p);
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
    const double pivot = lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = lu_(i, k) / pivot;
      lu_(i, k) = factor;
      if (factor == 0.0) continue;
      const double* rk = lu_.row(k);
      double* ri = lu_.row(i);
      for (std::size_t j = k + 1; j < n; ++j) ri[j] -= factor * rk[j];
    }
  }
}

Vector LuFactorization::solve_raw(const Vector& rhs) const {
  require(rhs.size() == size(), "rhs size differs from matrix");
  const std::size_t n = size();
  Vector w = rhs;
  for (std::size_t k = 0; k < n; ++k) {
    std::swap(w[k], w[piv_[k]]);
    // forward substitution folded into the swap pass
    for (std::size_t i = k + 1; i < n; ++i) w[i] -= lu_(i, k) * w[k];
  }
  for (std::size_t i = n; i-- > 0;) {
    const double* ri = lu_.row(i);
    double s = w[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= ri[j] * w[j];
    w[i] = s / ri[i];
  }
  return w;
}

Vector LuFactorization::solve(const Vector& rhs) const {
  Vector w = solve_raw(rhs);
  // One refinement step when the raw residual is out of proportion with the
  // problem scale; more steps never pay off in double precision here.
  const double eps = std::numeric_limits<double>::epsilon();
  const double tol_solve = 100.0 * static_cast<double>(size()) * eps * m_norm1_ * norm1(w);
  Vector r = m_ * w;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = rhs[i] - r[i];
  if (norm1(r) > tol_solve) {
    const Vector d = solve_raw(r);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += d[i];
  }
  return w;
}

Matrix LuFactorization::inverse() const {
  const std::size_t n = size();
  Matrix inv(n, n);
  Vector e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const Vector col = solve(e);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    e[j] = 0.0;
  }
  return inv;
}

double LuFactorization::reconstruction_defect() const {
  const std::size_t n = size();
  // P * M: apply the recorded swap sequence to a copy of the original rows.
  Matrix pm = m_;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t p = static_cast<std::size_t>(piv_[k]);
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(pm(k, j), pm(p, j));
  }
  Matrix prod(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      const std::size_t kmax = std::min(i, j);  // L unit lower, U upper
      for (std::size_t k = 0; k <= kmax; ++k) {
        const double lik = (k == i) ? 1.0 : lu_(i, k);
        s += lik * ((k <= j) ? lu_(k, j) : 0.0);
      }
      prod(i, j) = s;
    }
  return norm1(pm - prod);
}

}  // namespace normeq
