#pragma once

#include <cstddef>
#include <vector>

#include "normeq/errors.hpp"

namespace normeq {

using Vector = std::vector<double>;

// Row-major dense matrix of doubles. Everything here is desk scale; no
// blocking, no views, value semantics throughout.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// --- norms and elementwise predicates ---

// Sum of absolute values.
double norm1(const Vector& v);
// Largest absolute entry.
double norm_inf(const Vector& v);
// Plain left-to-right sum.
double sum(const Vector& v);
// Max absolute column sum.
double norm1(const Matrix& m);
// Max absolute row sum.
double norm_inf(const Matrix& m);

// Every entry >= -tol.
bool is_nonneg(const Vector& v, double tol = 0.0);
bool is_nonneg(const Matrix& m, double tol = 0.0);

// --- arithmetic ---

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(double s, const Vector& v);

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& m);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& m, const Vector& v);

Matrix transpose(const Matrix& m);
// a + s * I
Matrix add_scaled_identity(Matrix a, double s);
// u v^T
Matrix outer(const Vector& u, const Vector& v);
// m^T v without forming the transpose
Vector transpose_times(const Matrix& m, const Vector& v);
// Column sums as a vector (equals m^T 1).
Vector column_sums(const Matrix& m);

// --- LU with partial pivoting ---
//
// Keeps the original matrix so solves can run one step of iterative
// refinement when the raw residual exceeds 100 * n * eps * |M|_1 * |w|_1.
class LuFactorization {
 public:
  // Throws SingularMatrixError when a pivot magnitude falls below 1e-300.
  explicit LuFactorization(Matrix m);

  std::size_t size() const { return lu_.rows(); }

  // Solve M w = rhs. Refinement policy above.
  Vector solve(const Vector& rhs) const;

  // Substitution only, no refinement. Exposed for tests.
  Vector solve_raw(const Vector& rhs) const;

  // Explicit inverse, column by column. Reserved for the doubling
  // initialization and diagnostics; everything else should call solve().
  Matrix inverse() const;

  // |P M - L U|_1 of the stored factors; bounded by 10 * n * eps * |M|_1.
  double reconstruction_defect() const;

  const Matrix& matrix() const { return m_; }
  const Matrix& packed() const { return lu_; }
  const std::vector<int>& pivots() const { return piv_; }

 private:
  Matrix m_;              // original
  Matrix lu_;             // L below diagonal (unit), U on and above
  std::vector<int> piv_;  // row swapped with i at step i
  double m_norm1_ = 0.0;
};

inline LuFactorization lu_factor(Matrix m) { return LuFactorization(std::move(m)); }

inline Vector lu_solve(const LuFactorization& f, const Vector& rhs) { return f.solve(rhs); }

}  // namespace normeq
