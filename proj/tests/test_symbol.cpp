#include <doctest.h>

#include <cmath>
#include <complex>

#include "normeq/rng.hpp"
#include "normeq/symbol.hpp"
#include "oracles.hpp"

using namespace normeq;

TEST_CASE("make_symbol normalizes the support") {
  LaurentSymbol s = make_symbol(2, {1.0});  // z^2 alone: lo must be padded to 0
  CHECK(s.lo == 0);
  CHECK(s.coeffs.size() == 3);
  CHECK(s.coeff(2) == 1.0);
  CHECK(s.coeff(0) == 0.0);

  LaurentSymbol t = make_symbol(-3, {0.0, 0.0, 1.0, 2.0, 0.0, 0.0});
  CHECK(t.lo == -1);
  CHECK(t.hi() == 0);
  CHECK(t.coeff(-1) == 1.0);
  CHECK(t.coeff(0) == 2.0);
}

TEST_CASE("wiener norm sums absolute coefficients") {
  LaurentSymbol a = make_symbol(-1, {0.3, 0.2, 0.4});  // 0.3/z + 0.2 + 0.4 z
  CHECK(wiener_norm(a) == doctest::Approx(0.9));
  CHECK(is_nonneg(a));
  CHECK_FALSE(is_nonneg(make_symbol(0, {-0.1})));
}

TEST_CASE("toeplitz section places coeff(j - i)") {
  LaurentSymbol a = make_symbol(-1, {0.3, 0.2, 0.4});
  Matrix t = toeplitz_section(a, 3);
  // row i: entry (i, j) = a_{j-i}; subdiagonal 0.3, diagonal 0.2, super 0.4
  CHECK(t(1, 0) == doctest::Approx(0.3));
  CHECK(t(1, 1) == doctest::Approx(0.2));
  CHECK(t(1, 2) == doctest::Approx(0.4));
  CHECK(t(0, 2) == doctest::Approx(0.0));
  CHECK(norm1(t) <= wiener_norm(a) + 1e-15);

  // Section norm never exceeds the symbol norm, any section size.
  for (std::size_t n : {1, 2, 5, 17})
    CHECK(norm1(toeplitz_section(a, n)) <= wiener_norm(a) + 1e-15);
}

TEST_CASE("symbol arithmetic matches naive convolution") {
  LaurentSymbol a = make_symbol(-1, {1.0, 2.0, 3.0});
  LaurentSymbol b = make_symbol(-2, {4.0, 0.0, 5.0});
  LaurentSymbol p = sym_mul(a, b);
  const std::vector<double> ref = oracle::conv({1.0, 2.0, 3.0}, {4.0, 0.0, 5.0});
  CHECK(p.lo == -3);
  for (std::size_t i = 0; i < ref.size(); ++i)
    CHECK(p.coeff(-3 + static_cast<int>(i)) == doctest::Approx(ref[i]));

  // Evaluation is a ring homomorphism: (a*b)(z) = a(z) b(z).
  const std::complex<double> z = std::polar(1.0, 0.7);
  const auto lhs = sym_eval(p, z);
  const auto rhs = sym_eval(a, z) * sym_eval(b, z);
  CHECK(std::abs(lhs - rhs) < 1e-12);

  LaurentSymbol s = sym_add(a, b);
  CHECK(std::abs(sym_eval(s, z) - (sym_eval(a, z) + sym_eval(b, z))) < 1e-12);
  CHECK(sym_sub(a, a) == LaurentSymbol{});
}

TEST_CASE("symbol_sqrt of zero is zero") {
  LaurentSymbol g = symbol_sqrt(make_symbol(0, {0.0}), 1e-13);
  CHECK(wiener_norm(g) == 0.0);
}

TEST_CASE("symbol_sqrt of a constant has a closed form") {
  // a = 0.75 constant: 1 - g = sqrt(1 - 0.75) = 0.5, so g = 0.5 constant.
  LaurentSymbol g = symbol_sqrt(make_symbol(0, {0.75}), 1e-13);
  CHECK(g.coeff(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(wiener_norm(g) == doctest::Approx(0.5).epsilon(1e-11));
}

TEST_CASE("symbol_sqrt round trip on random nonnegative symbols") {
  Xoshiro256pp rng(101);
  for (int trial = 0; trial < 8; ++trial) {
    // Random support [-3, 10] draw, normalized like the generator family.
    std::vector<double> neg(3), pos(10);
    for (auto& c : neg) c = rng.uniform();
    for (auto& c : pos) c = rng.uniform();
    neg.insert(neg.begin(), pos[0]);  // shared constant coefficient
    double s = 0.0;
    for (double c : neg) s += c;
    for (double c : pos) s += c;
    std::vector<double> coeffs;
    for (std::size_t i = neg.size(); i-- > 1;) coeffs.push_back(neg[i] / s);
    for (double c : pos) coeffs.push_back(c / s);
    LaurentSymbol a = make_symbol(-3, coeffs);
    REQUIRE(wiener_norm(a) < 1.0);

    LaurentSymbol g = symbol_sqrt(a, 1e-13);
    const LaurentSymbol defect = sym_sub(sym_sub(sym_scale(2.0, g), sym_mul(g, g)), a);
    CHECK(wiener_norm(defect) <= 1e-12);
    // Principal branch keeps g nonnegative up to interpolation noise.
    CHECK(is_nonneg(g, 1e-12));
    // Norm identity at z = 1: all coefficients nonnegative, so
    // wiener_norm(g) = g(1) = 1 - sqrt(1 - a(1)) = 1 - sqrt(1 - wiener_norm(a)).
    CHECK(wiener_norm(g) ==
          doctest::Approx(1.0 - std::sqrt(1.0 - wiener_norm(a))).epsilon(1e-10));
  }
}

TEST_CASE("symbol_sqrt rejects bad inputs") {
  CHECK_THROWS_AS(symbol_sqrt(make_symbol(0, {-0.1}), 1e-13), DomainError);
  CHECK_THROWS_AS(symbol_sqrt(make_symbol(0, {0.6, 0.6}), 1e-13), DomainError);
}
