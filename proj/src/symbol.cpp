#include "normeq/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace normeq {

LaurentSymbol make_symbol(int lo, std::vector<double> coeffs) {
  if (coeffs.empty()) return LaurentSymbol{};
  if (lo > 0) {
    coeffs.insert(coeffs.begin(), static_cast<std::size_t>(lo), 0.0);
    lo = 0;
  }
  // Trim zero fringes but keep the constant coefficient reachable (lo <= 0).
  std::size_t first = 0;
  while (first + 1 < coeffs.size() && coeffs[first] == 0.0 && lo + static_cast<int>(first) < 0)
    ++first;
  std::size_t last = coeffs.size();
  while (last > first + 1 && coeffs[last - 1] == 0.0 &&
         lo + static_cast<int>(last) - 1 > 0)
    --last;
  LaurentSymbol s;
  s.lo = lo + static_cast<int>(first);
  s.coeffs.assign(coeffs.begin() + static_cast<std::ptrdiff_t>(first),
                  coeffs.begin() + static_cast<std::ptrdiff_t>(last));
  return s;
}

double wiener_norm(const LaurentSymbol& a) {
  double s = 0.0;
  for (double c : a.coeffs) s += std::abs(c);
  return s;
}

bool is_nonneg(const LaurentSymbol& a, double tol) {
  for (double c : a.coeffs)
    if (c < -tol) return false;
  return true;
}

LaurentSymbol sym_add(const LaurentSymbol& a, const LaurentSymbol& b) {
  const int lo = std::min(a.lo, b.lo);
  const int hi = std::max(a.hi(), b.hi());
  std::vector<double> c(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (int k = lo; k <= hi; ++k)
    c[static_cast<std::size_t>(k - lo)] = a.coeff(k) + b.coeff(k);
  return make_symbol(lo, std::move(c));
}

LaurentSymbol sym_sub(const LaurentSymbol& a, const LaurentSymbol& b) {
  return sym_add(a, sym_scale(-1.0, b));
}

LaurentSymbol sym_mul(const LaurentSymbol& a, const LaurentSymbol& b) {
  const int lo = a.lo + b.lo;
  std::vector<double> c(a.coeffs.size() + b.coeffs.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j)
      c[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return make_symbol(lo, std::move(c));
}

LaurentSymbol sym_scale(double s, const LaurentSymbol& a) {
  LaurentSymbol r = a;
  for (double& c : r.coeffs) c *= s;
  return make_symbol(r.lo, std::move(r.coeffs));
}

std::complex<double> sym_eval(const LaurentSymbol& a, std::complex<double> z) {
  // Horner on the polynomial part, scaled by z^lo.
  std::complex<double> acc = 0.0;
  for (std::size_t i = a.coeffs.size(); i-- > 0;) acc = acc * z + a.coeffs[i];
  return acc * std::pow(z, a.lo);
}

Matrix toeplitz_section(const LaurentSymbol& a, std::size_t n) {
  Matrix t(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      t(i, j) = a.coeff(static_cast<int>(j) - static_cast<int>(i));
  return t;
}

namespace {

// Interpolated coefficients of 1 - sqrt(1 - a) on the N-th roots of unity,
// indexed k = -N/2 .. N/2 - 1. Direct O(N^2) sums over a precomputed twiddle
// table; N stays desk scale.
std::vector<double> sqrt_coeffs_at(const LaurentSymbol& a, int n_samples, double* max_imag) {
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<std::complex<double>> twiddle(static_cast<std::size_t>(n_samples));
  for (int j = 0; j < n_samples; ++j)
    twiddle[static_cast<std::size_t>(j)] = std::polar(1.0, two_pi * j / n_samples);
  std::vector<std::complex<double>> values(static_cast<std::size_t>(n_samples));
  for (int j = 0; j < n_samples; ++j) {
    const std::complex<double> omega = twiddle[static_cast<std::size_t>(j)];
    values[static_cast<std::size_t>(j)] = 1.0 - std::sqrt(1.0 - sym_eval(a, omega));
  }
  std::vector<double> coeffs(static_cast<std::size_t>(n_samples));
  *max_imag = 0.0;
  for (int k = -n_samples / 2; k < n_samples / 2; ++k) {
    std::complex<double> acc = 0.0;
    // omega^{-jk} walks the table backwards by k steps per j.
    std::size_t idx = 0;
    const std::size_t step =
        static_cast<std::size_t>(((-k % n_samples) + n_samples) % n_samples);
    for (int j = 0; j < n_samples; ++j) {
      acc += values[static_cast<std::size_t>(j)] * twiddle[idx];
      idx += step;
      if (idx >= static_cast<std::size_t>(n_samples)) idx -= static_cast<std::size_t>(n_samples);
    }
    acc /= static_cast<double>(n_samples);
    *max_imag = std::max(*max_imag, std::abs(acc.imag()));
    coeffs[static_cast<std::size_t>(k + n_samples / 2)] = acc.real();
  }
  return coeffs;
}

int next_pow2(int n) {
  int p = 1;
  while (p < n) p *= 2;
  return p;
}

}  // namespace

LaurentSymbol symbol_sqrt(const LaurentSymbol& a, double tol) {
  if (!is_nonneg(a)) throw DomainError("symbol_sqrt: negative coefficient");
  if (wiener_norm(a) >= 1.0) throw DomainError("symbol_sqrt: wiener norm not below 1");
  if (wiener_norm(a) == 0.0) return LaurentSymbol{};

  const int width = a.hi() - a.lo + 1;
  int n_samples = std::max(8, next_pow2(4 * width));
  for (int doubling = 0; doubling <= 12; ++doubling, n_samples *= 2) {
    double max_imag = 0.0;
    const std::vector<double> raw = sqrt_coeffs_at(a, n_samples, &max_imag);
    if (max_imag >= 1e-10)
      throw ConvergenceError("symbol_sqrt: interpolation left imaginary residue");

    // Aliasing control: everything past a quarter of the window must be tail.
    double tail = 0.0;
    for (int k = -n_samples / 2; k < n_samples / 2; ++k)
      if (std::abs(k) > n_samples / 4)
        tail = std::max(tail, std::abs(raw[static_cast<std::size_t>(k + n_samples / 2)]));
    if (tail > tol) continue;

    // Truncate trailing coefficients below tol, but budget the total dropped
    // mass at tol/2 per side so the re-expansion guarantee survives slowly
    // decaying tails.
    int lo = -n_samples / 2, hi = n_samples / 2 - 1;
    auto at = [&](int k) { return raw[static_cast<std::size_t>(k + n_samples / 2)]; };
    double dropped = 0.0;
    while (lo < 0 && std::abs(at(lo)) < tol && dropped + std::abs(at(lo)) <= 0.5 * tol)
      dropped += std::abs(at(lo++));
    dropped = 0.0;
    while (hi > 0 && std::abs(at(hi)) < tol && dropped + std::abs(at(hi)) <= 0.5 * tol)
      dropped += std::abs(at(hi--));
    std::vector<double> kept;
    kept.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (int k = lo; k <= hi; ++k) kept.push_back(at(k));
    LaurentSymbol g = make_symbol(lo, std::move(kept));

    // Re-expansion check: the returned g must actually solve a = 2g - g^2.
    const LaurentSymbol defect = sym_sub(sym_sub(sym_scale(2.0, g), sym_mul(g, g)), a);
    if (wiener_norm(defect) <= 10.0 * tol) return g;
  }
  throw ConvergenceError("symbol_sqrt: sample-count doublings exhausted");
}

}  // namespace normeq
