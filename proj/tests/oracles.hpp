#pragma once

// Independent reference routes used by the unit and acceptance suites. These
// deliberately avoid the library's LU/solver code paths: Gauss-Jordan
// elimination for inverses, central differences for derivatives, naive
// convolution for symbol products.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "normeq/linalg.hpp"

namespace oracle {

// Gauss-Jordan inverse with row pivoting: eliminate above and below the
// pivot in one sweep, accumulating the inverse alongside.
inline normeq::Matrix gj_inverse(const normeq::Matrix& m) {
  const std::size_t n = m.rows();
  normeq::Matrix a = m;
  normeq::Matrix inv = normeq::Matrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t prow = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        prow = i;
      }
    if (best == 0.0) throw std::runtime_error("gj_inverse: singular");
    if (prow != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(prow, j));
        std::swap(inv(k, j), inv(prow, j));
      }
    const double pivot = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= pivot;
      inv(k, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const double factor = a(i, k);
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= factor * a(k, j);
        inv(i, j) -= factor * inv(k, j);
      }
    }
  }
  return inv;
}

inline normeq::Vector gj_solve(const normeq::Matrix& m, const normeq::Vector& rhs) {
  return gj_inverse(m) * rhs;
}

// Central difference approximation of df/dmu.
template <typename F>
double central_diff(F&& f, double mu, double h) {
  return (f(mu + h) - f(mu - h)) / (2.0 * h);
}

// Naive coefficient convolution: c_k = sum_i a_i b_{k-i}, inputs given as
// dense coefficient blocks (offsets tracked by the caller).
inline std::vector<double> conv(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

}  // namespace oracle
