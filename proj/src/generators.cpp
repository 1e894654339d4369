#include "normeq/generators.hpp"

#include <numeric>
#include <utility>

#include "normeq/errors.hpp"
#include "normeq/rng.hpp"
#include "normeq/symbol.hpp"

namespace normeq {

ProblemInstance example1_from(std::vector<double> a1, std::vector<double> a2,
                              Vector b_raw, std::size_t m, bool strict) {
  if (a1.empty() || a2.empty())
    throw DomainError("example1_from: coefficient blocks must be nonempty");
  if (b_raw.empty() || b_raw.size() > m)
    throw DomainError("example1_from: b support must lie within the dimension");

  a1[0] = a2[0];
  const double s = std::accumulate(a1.begin(), a1.end(), 0.0) +
                   std::accumulate(a2.begin(), a2.end(), 0.0);
  if (s > 0.0) {
    for (auto& c : a1) c /= s;
    for (auto& c : a2) c /= s;
  }

  // Coefficients of z^{-(p-1)} .. z^{q-1}; the shared constant sits at p-1.
  const std::size_t p = a1.size(), q = a2.size();
  std::vector<double> coeffs(p - 1 + q, 0.0);
  for (std::size_t k = 1; k < p; ++k) coeffs[p - 1 - k] = a1[k];
  for (std::size_t j = 0; j < q; ++j) coeffs[p - 1 + j] = a2[j];
  const LaurentSymbol g = symbol_sqrt(make_symbol(-static_cast<int>(p - 1), coeffs));

  Vector b(m, 0.0);
  const double total = std::accumulate(b_raw.begin(), b_raw.end(), 0.0);
  if (total > 0.0) {
    const double margin = 1.0 - wiener_norm(g);
    const double target = 0.5 * margin * margin;
    for (std::size_t i = 0; i < b_raw.size(); ++i) b[i] = target * b_raw[i] / total;
  }
  return build_toeplitz_problem(g, std::move(b), strict);
}

ProblemInstance gen_example1(std::size_t p, std::size_t q, std::size_t n, std::size_t m,
                             std::uint64_t seed) {
  if (p < 1 || q < 1) throw DomainError("gen_example1: p and q must be at least 1");
  if (n < 1 || m < n) throw DomainError("gen_example1: need 1 <= n <= m");

  Xoshiro256pp rng(seed);
  std::vector<double> a1(p), a2(q);
  for (auto& c : a1) c = rng.uniform();
  for (auto& c : a2) c = rng.uniform();
  Vector b_raw(n);
  for (auto& e : b_raw) e = rng.uniform();
  return example1_from(std::move(a1), std::move(a2), std::move(b_raw), m);
}

ProblemInstance example2_from(Matrix m_raw, Vector b_raw, double delta, double sigma,
                              bool strict) {
  if (delta <= 0.0) throw DomainError("example2_from: delta must be positive");
  if (m_raw.rows() != m_raw.cols() || m_raw.rows() != b_raw.size())
    throw DimensionError("example2_from: need square M matching b");

  const double nrm = norm1(m_raw);
  Matrix m = nrm > 0.0 ? (1.0 / ((1.0 + delta) * nrm)) * m_raw : std::move(m_raw);

  const double beta = 1.0 - norm1(m);
  if (!(sigma > 0.0 && sigma < beta))
    throw DomainError("example2_from: sigma must lie in (0, 1 - |M|_1)");

  const double total = norm1(b_raw);
  Vector b = std::move(b_raw);
  if (total > 0.0) {
    const double target = (beta - sigma) * (beta - sigma);
    for (auto& e : b) e *= target / total;
  }
  auto inst = build_dense_problem(std::move(m), std::move(b), strict);
  inst.validation.note += std::string(inst.validation.note.empty() ? "" : "; ") +
                          "b normalized in the 1-norm to (1 - |M|_1 - sigma)^2";
  return inst;
}

ProblemInstance gen_example2(std::size_t n, double delta, double sigma,
                             std::uint64_t seed) {
  if (n < 1) throw DomainError("gen_example2: n must be positive");

  Xoshiro256pp rng(seed);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.uniform();
  Vector b(n);
  for (auto& e : b) e = rng.uniform();
  return example2_from(std::move(m), std::move(b), delta, sigma);
}

}  // namespace normeq
