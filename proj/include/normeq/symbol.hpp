#pragma once

#include <complex>
#include <vector>

#include "normeq/linalg.hpp"

namespace normeq {

// Finite Laurent series a(z) = sum_k coeffs[k - lo] z^k. Kept normalized:
// lo <= 0 (zero-padded if needed) and no all-zero fringe beyond the support,
// except that the constant coefficient is always present.
struct LaurentSymbol {
  int lo = 0;
  std::vector<double> coeffs{0.0};

  int hi() const { return lo + static_cast<int>(coeffs.size()) - 1; }

  // Coefficient of z^k, zero outside the stored support.
  double coeff(int k) const {
    const int idx = k - lo;
    if (idx < 0 || idx >= static_cast<int>(coeffs.size())) return 0.0;
    return coeffs[static_cast<std::size_t>(idx)];
  }

  bool operator==(const LaurentSymbol&) const = default;
};

// Normalizes (pads lo up to 0 if positive, trims zero fringes).
LaurentSymbol make_symbol(int lo, std::vector<double> coeffs);

// Sum of absolute coefficient values, left to right.
double wiener_norm(const LaurentSymbol& a);

bool is_nonneg(const LaurentSymbol& a, double tol = 0.0);

LaurentSymbol sym_add(const LaurentSymbol& a, const LaurentSymbol& b);
LaurentSymbol sym_sub(const LaurentSymbol& a, const LaurentSymbol& b);
// Cauchy product (exact convolution).
LaurentSymbol sym_mul(const LaurentSymbol& a, const LaurentSymbol& b);
LaurentSymbol sym_scale(double s, const LaurentSymbol& a);

std::complex<double> sym_eval(const LaurentSymbol& a, std::complex<double> z);

// n x n section with entry (i, j) = coeff(j - i).
Matrix toeplitz_section(const LaurentSymbol& a, std::size_t n);

// Solves a = 2g - g^2 for the symbol g with 1 - g(z) = sqrt(1 - a(z))
// (principal branch) by sampling on roots of unity and interpolating back.
// Requires coefficientwise a >= 0 and wiener_norm(a) < 1. The result
// satisfies wiener_norm(2g - g^2 - a) <= 10 * tol; throws ConvergenceError
// when 12 sample-count doublings cannot reach that.
LaurentSymbol symbol_sqrt(const LaurentSymbol& a, double tol = 1e-13);

}  // namespace normeq
