#include "normeq/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <utility>

#include "normeq/errors.hpp"
#include "normeq/generators.hpp"
#include "normeq/io.hpp"
#include "normeq/laplacian.hpp"
#include "normeq/perturbation.hpp"
#include "normeq/scalar_analysis.hpp"

namespace normeq {

namespace {

constexpr double kNoTau = std::numeric_limits<double>::quiet_NaN();

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <typename F>
std::pair<SolveResult, double> timed(F&& solve) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveResult r = solve();
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();
  return {std::move(r), ms};
}

RunRecord record_run(std::string experiment, std::string solver_name, double tau,
                     const ProblemInstance& p, SolveResult r, double wall_ms) {
  RunRecord rec;
  rec.experiment = std::move(experiment);
  rec.solver = std::move(solver_name);
  rec.tau = tau;
  rec.n = p.size();
  rec.iterations = r.iterations;
  rec.wall_ms = wall_ms;
  rec.final_residual =
      r.residual_history.empty() ? residual(p, r.x) : r.residual_history.back();
  rec.mu = r.mu;
  rec.status = r.status;
  rec.rows.reserve(static_cast<std::size_t>(r.iterations));
  for (int k = 1; k <= r.iterations; ++k)
    rec.rows.push_back({k, r.residual_history[static_cast<std::size_t>(k) - 1],
                        r.mu_history[static_cast<std::size_t>(k)]});
  return rec;
}

RunRecord run_lap_solve(const std::string& experiment, const LaplacianDecomposition& d,
                        const ProblemInstance& p, const SolverConfig& base) {
  auto [r, ms] = timed([&] { return solve_lap_equation(d, base); });
  return record_run(experiment, "newton2", kNoTau, p, std::move(r), ms);
}

std::vector<RunRecord> compare_set(const std::string& experiment,
                                   const ProblemInstance& p, const SolverConfig& base) {
  std::vector<RunRecord> records;

  SolverConfig fp = base;
  fp.tau_rule = TauRule::PlainFixedPoint;
  auto [rf, mf] = timed([&] { return solve_rfpi(p, fp); });
  records.push_back(record_run(experiment, "fp", 1.0, p, std::move(rf), mf));

  SolverConfig opt = base;
  opt.tau_rule = TauRule::OptAt;
  opt.mu0 = 0.0;
  const double tau0 = resolve_tau(p, opt, nullptr);
  auto [rr, mr] = timed([&] { return solve_rfpi(p, opt); });
  records.push_back(record_run(experiment, "rfpi", tau0, p, std::move(rr), mr));

  SolverConfig newton = base;
  auto [rn, mn] = timed([&] { return solve_newton(p, newton); });
  records.push_back(record_run(experiment, "newton", kNoTau, p, std::move(rn), mn));

  auto [rs, ms] = timed([&] { return solve_sda(p, base); });
  records.push_back(record_run(experiment, "sda", kNoTau, p, std::move(rs), ms));
  return records;
}

std::vector<RunRecord> run_tau_sweep(const ExperimentConfig& cfg, std::ostream& info) {
  const std::size_t m = cfg.n ? cfg.n : 400;
  const std::size_t support = std::max<std::size_t>(std::size_t{1}, m / 4);
  const auto p = gen_example1(3, 10, support, m, cfg.seed);

  const MuFunctions mf(p);
  const double tau0 = tau_opt(mf, 0.0);
  info << "tau(0) = " << fmt17(tau0) << "\n";

  std::vector<RunRecord> records;
  for (double tau : {0.1, 0.5, 0.9, tau0, 1.5, 1.9}) {
    SolverConfig c = cfg.solver;
    c.tau_rule = TauRule::Fixed;
    c.tau = tau;
    auto [r, ms] = timed([&] { return solve_rfpi(p, c); });
    records.push_back(record_run("rfpi_tau_sweep", "rfpi", tau, p, std::move(r), ms));
  }
  return records;
}

std::vector<RunRecord> run_solver_compare(const ExperimentConfig& cfg) {
  const std::size_t m = cfg.n ? cfg.n : 400;
  const std::size_t support = std::max<std::size_t>(std::size_t{1}, m / 2);
  const auto p = gen_example1(3, 10, support, m, cfg.seed);
  return compare_set("solver_compare", p, cfg.solver);
}

std::vector<RunRecord> run_laplacian_demo(const ExperimentConfig& cfg,
                                          std::ostream& info) {
  const Matrix l = laplacian_from_graph(demo_graph_directed());
  const auto d = decompose(l, suggest_v(l));
  const auto sq = rank_one_sqrt(d);

  char buf[32];
  info << "nu = " << fmt17(d.nu) << "\ny =";
  for (double yi : sq.y) {
    std::snprintf(buf, sizeof buf, " %.4f", yi);
    info << buf;
  }
  info << "\nreconstruction defect = " << fmt17(sq.defect) << "\n";

  const auto p = lap_problem(d, sq.v_sqrt);
  auto [r, ms] = timed([&] { return solve_lap_equation(d, cfg.solver); });
  // Ties the equation's solution back to the square-root factor.
  info << "|x - y|_1 = " << fmt17(norm1(r.x - sq.y)) << "\n";
  return {record_run("laplacian_demo", "newton2", kNoTau, p, std::move(r), ms)};
}

std::vector<RunRecord> run_perturbation_check(const ExperimentConfig& cfg,
                                              std::ostream& info) {
  const std::size_t n = cfg.n ? cfg.n : 50;
  const auto p = gen_example2(n, 0.9, 0.001, cfg.seed);

  const auto t0 = std::chrono::steady_clock::now();
  const auto report = verify_bound(p, 1e-6, 20, cfg.seed);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();

  RunRecord rec;
  rec.experiment = "perturbation_check";
  rec.solver = "perturbation";
  rec.tau = kNoTau;
  rec.n = n;
  rec.iterations = static_cast<int>(report.trials.size());
  rec.wall_ms = ms;
  rec.status = report.all_passed() ? SolveStatus::Converged : SolveStatus::Diverged;

  int flagged = 0;
  double max_ratio = 0.0, max_dx = 0.0;
  for (std::size_t i = 0; i < report.trials.size(); ++i) {
    const auto& t = report.trials[i];
    rec.rows.push_back({static_cast<int>(i) + 1, t.dx_norm, t.kappa});
    flagged += t.flagged ? 1 : 0;
    if (t.ratio > max_ratio) max_ratio = t.ratio;
    if (t.dx_norm > max_dx) max_dx = t.dx_norm;
  }
  rec.final_residual = max_dx;
  rec.mu = max_ratio;

  info << "slack = " << fmt17(report.slack) << ", max ratio = " << fmt17(max_ratio)
       << ", flagged = " << flagged << "/" << report.trials.size()
       << ", rejected draws = " << report.rejected_draws << "\n";
  return {std::move(rec)};
}

std::vector<RunRecord> run_custom(const ExperimentConfig& cfg) {
  if (cfg.problem_file.empty())
    throw DomainError("run_experiment: custom experiment needs a problem file");
  const auto p = load_problem(cfg.problem_file);
  if (p.is_laplacian()) {
    const auto& o = std::get<LaplacianOrigin>(p.origin);
    return {run_lap_solve("custom", decompose(o.l, o.v), p, cfg.solver)};
  }
  return compare_set("custom", p, cfg.solver);
}

}  // namespace

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg, std::ostream& info) {
  switch (cfg.kind) {
    case ExperimentKind::RfpiTauSweep: return run_tau_sweep(cfg, info);
    case ExperimentKind::SolverCompare: return run_solver_compare(cfg);
    case ExperimentKind::LaplacianDemo: return run_laplacian_demo(cfg, info);
    case ExperimentKind::PerturbationCheck: return run_perturbation_check(cfg, info);
    case ExperimentKind::Custom: return run_custom(cfg);
  }
  throw DomainError("run_experiment: unknown experiment kind");
}

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << "experiment,solver,tau,n,k,residual,mu,wall_ms,status\n";
  for (const auto& rec : records) {
    const std::string tau = std::isnan(rec.tau) ? std::string() : fmt17(rec.tau);
    for (const auto& row : rec.rows)
      out << rec.experiment << ',' << rec.solver << ',' << tau << ',' << rec.n << ','
          << row.k << ',' << fmt17(row.residual) << ',' << fmt17(row.mu) << ','
          << fmt17(rec.wall_ms) << ',' << to_string(rec.status) << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<RunRecord>& records) {
  out << "[";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    if (i) out << ",";
    out << "\n  {\"experiment\":\"" << rec.experiment << "\",\"solver\":\"" << rec.solver
        << "\",\"tau\":" << (std::isnan(rec.tau) ? "null" : fmt17(rec.tau))
        << ",\"n\":" << rec.n << ",\"iterations\":" << rec.iterations
        << ",\"wall_ms\":" << fmt17(rec.wall_ms)
        << ",\"final_residual\":" << fmt17(rec.final_residual)
        << ",\"mu\":" << fmt17(rec.mu) << ",\"status\":\"" << to_string(rec.status)
        << "\",\"rows\":[";
    for (std::size_t r = 0; r < rec.rows.size(); ++r) {
      if (r) out << ",";
      out << "{\"k\":" << rec.rows[r].k
          << ",\"residual\":" << fmt17(rec.rows[r].residual)
          << ",\"mu\":" << fmt17(rec.rows[r].mu) << "}";
    }
    out << "]}";
  }
  out << "\n]\n";
}

int exit_code(const std::vector<RunRecord>& records) {
  for (const auto& rec : records)
    if (rec.status != SolveStatus::Converged) return 1;
  return records.empty() ? 1 : 0;
}

}  // namespace normeq
