#include "normeq/solvers.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "doctest.h"
#include "oracles.hpp"

using namespace normeq;

namespace {

// A = 2I with |b|_1 = s: the root is mu* = 1 - sqrt(1 - s) and x* = b/(2 - mu*).
ProblemInstance identity_family(double s) {
  Matrix m(3, 3);
  Vector b = {s / 2.0, s / 3.0, s / 6.0};
  return build_dense_problem(m, b, s < 1.0);
}

double exact_mu(double s) { return 1.0 - std::sqrt(1.0 - s); }

Vector exact_x(const ProblemInstance& p, double s) {
  Vector x = p.b;
  const double d = 2.0 - exact_mu(s);
  for (double& e : x) e /= d;
  return x;
}

void check_result_shape(const SolveResult& r) {
  CHECK(r.mu_history.size() == static_cast<std::size_t>(r.iterations) + 1);
  CHECK(r.residual_history.size() == static_cast<std::size_t>(r.iterations));
}

}  // namespace

TEST_CASE("all four iterations agree with the closed form") {
  for (double s : {0.5, 0.75, 0.9}) {
    CAPTURE(s);
    const ProblemInstance p = identity_family(s);
    const double mu_star = exact_mu(s);
    const Vector x_star = exact_x(p, s);

    SolverConfig plain;  // tau = 1
    SolverConfig opt;
    opt.tau_rule = TauRule::OptAt;
    SolverConfig newton;
    SolverConfig doubling;

    const SolveResult results[] = {solve_rfpi(p, plain), solve_rfpi(p, opt),
                                   solve_newton(p, newton), solve_sda(p, doubling)};
    for (const SolveResult& r : results) {
      CHECK(r.status == SolveStatus::Converged);
      CHECK(std::abs(r.mu - mu_star) <= 1e-12);
      CHECK(std::abs(norm1(r.x) - r.mu) <= 1e-12);
      Vector diff = r.x;
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= x_star[i];
      CHECK(norm1(diff) <= 1e-12);
      CHECK(residual(p, r.x) <= r.tol_used);
      CHECK(r.tol_used == 1e-15);  // healthy instances never relax
      check_result_shape(r);
    }
  }
}

TEST_CASE("solver solution matches an elimination oracle through the root") {
  const double s = 0.75;
  const ProblemInstance p = identity_family(s);
  const Vector via_oracle = oracle::gj_solve(add_scaled_identity(p.A, -exact_mu(s)), p.b);
  const SolveResult r = solve_sda(p);
  REQUIRE(r.status == SolveStatus::Converged);
  for (std::size_t i = 0; i < via_oracle.size(); ++i)
    CHECK(r.x[i] == doctest::Approx(via_oracle[i]).epsilon(1e-12));
}

TEST_CASE("one doubling step reproduces hand-computed rationals") {
  Matrix m(2, 2);
  const ProblemInstance p = build_dense_problem(m, {0.5, 0.25}, true);

  SdaState st = sda_init(p);
  CHECK(st.k == 0);
  CHECK(st.c == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(st.u[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(st.u[1] == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(st.v[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(st.v[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(st.F(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(st.F(0, 1) == doctest::Approx(0.0));
  CHECK(st.alpha() == doctest::Approx(0.1875));
  CHECK(st.beta_k() == doctest::Approx(0.1875));

  sda_step(st);
  CHECK(st.k == 1);
  CHECK(st.c == doctest::Approx(9.0 / 52.0).epsilon(1e-14));
  CHECK(st.u[0] == doctest::Approx(4.0 / 13.0).epsilon(1e-14));
  CHECK(st.u[1] == doctest::Approx(2.0 / 13.0).epsilon(1e-14));
  CHECK(st.v[0] == doctest::Approx(8.0 / 13.0).epsilon(1e-14));
  CHECK(st.v[1] == doctest::Approx(8.0 / 13.0).epsilon(1e-14));
  CHECK(st.F(0, 0) == doctest::Approx(15.0 / 52.0).epsilon(1e-14));
  CHECK(st.F(0, 1) == doctest::Approx(1.0 / 26.0).epsilon(1e-14));
  CHECK(st.F(1, 0) == doctest::Approx(1.0 / 52.0).epsilon(1e-14));
  CHECK(st.F(1, 1) == doctest::Approx(7.0 / 26.0).epsilon(1e-14));

  // |b|_1 = 0.75 here, so mu* = 0.5 and x* = b/1.5; the distance after one
  // step is exactly 1/26.
  Vector err = st.u;
  err[0] -= 1.0 / 3.0;
  err[1] -= 1.0 / 6.0;
  CHECK(norm1(err) == doctest::Approx(1.0 / 26.0).epsilon(1e-13));
}

TEST_CASE("doubling monitors obey the certified envelopes") {
  const ProblemInstance p = identity_family(0.75);
  const Vector x_star = exact_x(p, 0.75);
  SdaState st = sda_init(p);
  double pow2 = 1.0;  // 2^k
  for (int k = 0; k <= 5; ++k) {
    CAPTURE(k);
    const double ratio = pow2 / (pow2 + 1.0);
    CHECK(st.alpha() < ratio * ratio);
    CHECK(st.beta_k() < 1.0 / ((pow2 + 1.0) * (pow2 + 1.0)));
    Vector err = st.u;
    for (std::size_t i = 0; i < err.size(); ++i) err[i] -= x_star[i];
    CHECK(norm1(err) < 1.0 / pow2);
    sda_step(st);
    pow2 *= 2.0;
  }
}

TEST_CASE("zero load is an exact fixed point") {
  Matrix m(2, 2);
  m(0, 1) = 0.3;
  m(1, 0) = 0.2;
  const ProblemInstance p = build_dense_problem(m, Vector(2, 0.0), true);

  const SolveResult fp = solve_rfpi(p);
  CHECK(fp.status == SolveStatus::Converged);
  CHECK(fp.iterations == 1);
  CHECK(fp.mu == 0.0);
  CHECK(norm1(fp.x) == 0.0);

  const SolveResult dbl = solve_sda(p);
  CHECK(dbl.status == SolveStatus::Converged);
  CHECK(dbl.iterations == 0);
  CHECK(norm1(dbl.x) == 0.0);
  check_result_shape(dbl);

  const SolveResult nw = solve_newton(p);
  CHECK(nw.status == SolveStatus::Converged);
  CHECK(nw.mu == 0.0);

  // c = 0 from the start: a step advances k and changes nothing else.
  SdaState st = sda_init(p);
  REQUIRE(st.c == 0.0);
  const Matrix f_before = st.F;
  sda_step(st);
  CHECK(st.k == 1);
  CHECK(st.c == 0.0);
  CHECK(st.F == f_before);
}

TEST_CASE("newton iterates climb monotonically") {
  const ProblemInstance p = identity_family(0.9);
  const SolveResult r = solve_newton(p);
  REQUIRE(r.status == SolveStatus::Converged);
  CHECK(r.iterations <= 30);
  for (std::size_t i = 0; i + 1 < r.mu_history.size(); ++i)
    CHECK(r.mu_history[i + 1] >= r.mu_history[i] - 1e-15);
  CHECK(r.mu_history.back() <= exact_mu(0.9) + 1e-12);
}

TEST_CASE("relaxation ranking: tuned beats plain beats damped") {
  const ProblemInstance p = identity_family(0.75);
  SolverConfig opt;
  opt.tau_rule = TauRule::OptAt;
  SolverConfig damped;
  damped.tau_rule = TauRule::Fixed;
  damped.tau = 0.5;

  const int tuned = solve_rfpi(p, opt).iterations;
  const int plain = solve_rfpi(p).iterations;
  const int slow = solve_rfpi(p, damped).iterations;
  CHECK(tuned <= plain);
  CHECK(plain <= slow);
}

TEST_CASE("fixed tau outside the admissible bound is noted but clamped iteration still lands") {
  // |b|_1 = 0.4 gives tau_adm = min{2, 5, 1/0.6} = 5/3.
  const ProblemInstance p = identity_family(0.4);
  {
    const MuFunctions mf(p);
    CHECK(mf.tau_admissible_max() == doctest::Approx(5.0 / 3.0));
  }
  SolverConfig cfg;
  cfg.tau_rule = TauRule::Fixed;
  cfg.tau = 1.9;
  const SolveResult r = solve_rfpi(p, cfg);
  CHECK(r.status == SolveStatus::Converged);
  CHECK(r.detail.find("admissible") != std::string::npos);
  CHECK(std::abs(r.mu - exact_mu(0.4)) <= 1e-12);
}

TEST_CASE("tau tuned away from zero is capped at the admissible bound") {
  const ProblemInstance p = identity_family(0.96);
  SolverConfig cfg;
  cfg.tau_rule = TauRule::OptAt;
  cfg.mu0 = 0.8;  // f'(0.8) = 2/3 makes the raw tuning 3
  std::string note;
  const double tau = resolve_tau(p, cfg, &note);
  CHECK(tau == doctest::Approx(2.0));
  CHECK(note.find("clamped") != std::string::npos);

  const SolveResult r = solve_rfpi(p, cfg);
  CHECK(r.status == SolveStatus::Converged);
  CHECK(std::abs(r.mu - exact_mu(0.96)) <= 1e-11);
}

TEST_CASE("config validation") {
  const ProblemInstance p = identity_family(0.5);
  SolverConfig cfg;
  cfg.tau_rule = TauRule::Fixed;
  cfg.tau = 0.0;
  CHECK_THROWS_AS(solve_rfpi(p, cfg), DomainError);
  cfg.tau = 2.5;
  CHECK_THROWS_AS(solve_rfpi(p, cfg), DomainError);
  cfg.tau = -1.0;
  CHECK_THROWS_AS(solve_rfpi(p, cfg), DomainError);

  SolverConfig bad_mu;
  bad_mu.mu0 = -0.1;
  CHECK_THROWS_AS(solve_rfpi(p, bad_mu), DomainError);
  bad_mu.mu0 = 1.5;  // beta = 1 here
  CHECK_THROWS_AS(solve_newton(p, bad_mu), DomainError);

  SolverConfig bad_tol;
  bad_tol.tol = 0.0;
  CHECK_THROWS_AS(solve_sda(p, bad_tol), DomainError);

  SolverConfig bad_mult;
  bad_mult.newton_multiplicity = 3;
  CHECK_THROWS_AS(solve_newton(p, bad_mult), DomainError);
}

TEST_CASE("degenerate doubling pivot throws") {
  SdaState st;
  st.c = 0.5;
  st.u = {1.0};
  st.v = {1.0};
  st.F = Matrix::identity(1);
  CHECK_THROWS_AS(sda_step(st), SingularPivotError);
}

TEST_CASE("unreachable tolerance relaxes to 1e-13 and is reported") {
  Matrix m(2, 2);
  m(0, 0) = 0.1;
  m(0, 1) = 0.2;
  m(1, 0) = 0.3;
  m(1, 1) = 0.1;
  const ProblemInstance p = build_dense_problem(m, {0.1, 0.05}, true);

  SolverConfig cfg;
  cfg.tol = 1e-30;  // below the rounding floor of any factorization
  for (const SolveResult& r : {solve_rfpi(p, cfg), solve_newton(p, cfg)}) {
    CHECK(r.status == SolveStatus::Converged);
    CHECK(r.tol_used == 1e-13);
    CHECK(r.detail.find("relaxed") != std::string::npos);
    CHECK(residual(p, r.x) <= 1e-13);
  }
}

TEST_CASE("non-finite data surfaces as divergence, not an exception") {
  Matrix m(2, 2);
  const Vector b = {std::numeric_limits<double>::quiet_NaN(), 0.1};
  const ProblemInstance p = build_dense_problem(m, b, false);
  CHECK_FALSE(p.validation.all_passed());
  const SolveResult r = solve_rfpi(p);
  CHECK(r.status == SolveStatus::Diverged);
  CHECK(r.iterations == 1);
}

TEST_CASE("max iteration cap is respected and reported") {
  const ProblemInstance p = identity_family(0.9);
  SolverConfig cfg;
  cfg.max_iter = 3;
  cfg.tau_rule = TauRule::Fixed;
  cfg.tau = 0.1;  // far too damped to land in three steps
  const SolveResult r = solve_rfpi(p, cfg);
  CHECK(r.status == SolveStatus::MaxIterations);
  CHECK(r.iterations == 3);
  check_result_shape(r);
}
