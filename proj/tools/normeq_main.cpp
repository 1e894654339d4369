#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>

#include "CLI11.hpp"
#include "normeq/errors.hpp"
#include "normeq/experiments.hpp"
#include "normeq/generators.hpp"
#include "normeq/io.hpp"
#include "normeq/laplacian.hpp"
#include "normeq/solvers.hpp"

namespace {

using namespace normeq;

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void emit_records(const std::vector<RunRecord>& records, const std::string& out_path,
                  OutputFormat format, std::ostream& fallback) {
  const auto write = [&](std::ostream& os) {
    if (format == OutputFormat::Csv)
      write_csv(os, records);
    else
      write_json(os, records);
  };
  if (out_path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream os(out_path);
  if (!os) throw IoError("cannot write " + out_path);
  write(os);
}

RunRecord summarize(const std::string& experiment, const std::string& solver, double tau,
                    const ProblemInstance& p, const SolveResult& r) {
  RunRecord rec;
  rec.experiment = experiment;
  rec.solver = solver;
  rec.tau = tau;
  rec.n = p.size();
  rec.iterations = r.iterations;
  rec.final_residual =
      r.residual_history.empty() ? residual(p, r.x) : r.residual_history.back();
  rec.mu = r.mu;
  rec.status = r.status;
  for (int k = 1; k <= r.iterations; ++k)
    rec.rows.push_back({k, r.residual_history[static_cast<std::size_t>(k) - 1],
                        r.mu_history[static_cast<std::size_t>(k)]});
  return rec;
}

int cmd_solve(const std::string& path, std::string solver, const SolverConfig& base,
              bool tau_given, double tau, const std::string& out_path,
              OutputFormat format, int strictness) {
  const auto p = load_problem(path);
  if (strictness == 1 && !p.validation.all_passed()) {
    std::cerr << "error: instance fails strict validation:";
    for (const auto& c : p.validation.checks)
      if (!c.passed) std::cerr << ' ' << c.name;
    std::cerr << "\n";
    return 2;
  }

  if (solver.empty()) solver = p.is_laplacian() ? "newton2" : "newton";
  SolverConfig cfg = base;
  double tau_used = std::numeric_limits<double>::quiet_NaN();
  SolveResult r;
  if (solver == "fp") {
    cfg.tau_rule = TauRule::PlainFixedPoint;
    tau_used = 1.0;
    r = solve_rfpi(p, cfg);
  } else if (solver == "rfpi") {
    cfg.tau_rule = tau_given ? TauRule::Fixed : TauRule::OptAt;
    cfg.tau = tau;
    r = solve_rfpi(p, cfg);
    tau_used = resolve_tau(p, cfg, nullptr);
  } else if (solver == "newton" || solver == "newton2") {
    cfg.newton_multiplicity = solver == "newton2" ? 2 : 1;
    if (p.is_laplacian() && solver == "newton2") {
      const auto& o = std::get<LaplacianOrigin>(p.origin);
      r = solve_lap_equation(decompose(o.l, o.v), cfg);
    } else {
      r = solve_newton(p, cfg);
    }
  } else if (solver == "sda") {
    r = solve_sda(p, cfg);
  } else {
    std::cerr << "error: unknown solver '" << solver << "'\n";
    return 2;
  }
  if (tau_given && solver != "rfpi" && solver != "fp")
    std::cerr << "note: --tau is ignored by solver '" << solver << "'\n";

  const auto rec = summarize("solve", solver, tau_used, p, r);
  std::cout << "solver = " << solver << "\nstatus = " << to_string(r.status)
            << "\niterations = " << r.iterations << "\nmu = " << fmt17(r.mu)
            << "\nresidual = " << fmt17(rec.final_residual)
            << "\ntol_used = " << fmt17(r.tol_used) << "\n";
  if (!std::isnan(tau_used)) std::cout << "tau = " << fmt17(tau_used) << "\n";
  if (!r.detail.empty()) std::cout << "detail: " << r.detail << "\n";

  if (!out_path.empty()) emit_records({rec}, out_path, format, std::cout);
  return r.status == SolveStatus::Converged ? 0 : 1;
}

int cmd_laplacian(const std::string& path, int source, bool do_solve, double tol,
                  const std::string& out_path) {
  const Matrix l = laplacian_from_graph(load_edge_list(path));
  Vector v;
  if (source < 0) {
    v = suggest_v(l);
  } else {
    if (static_cast<std::size_t>(source) >= l.rows())
      throw DomainError("laplacian: --source out of range");
    v = Vector(l.rows(), 0.0);
    v[static_cast<std::size_t>(source)] = 1.0;
  }

  const auto d = decompose(l, v);
  const auto sq = rank_one_sqrt(d);
  char buf[32];
  std::cout << "n = " << l.rows() << "\nnu = " << fmt17(d.nu) << "\ny =";
  for (double yi : sq.y) {
    std::snprintf(buf, sizeof buf, " %.4f", yi);
    std::cout << buf;
  }
  std::cout << "\nreconstruction defect = " << fmt17(sq.defect) << "\n";

  if (!out_path.empty()) save_problem(lap_problem(d, sq.v_sqrt), out_path);

  if (do_solve) {
    SolverConfig cfg;
    cfg.tol = tol;
    const auto r = solve_lap_equation(d, cfg);
    std::cout << "solve status = " << to_string(r.status)
              << ", iterations = " << r.iterations
              << ", |x - y|_1 = " << fmt17(norm1(r.x - sq.y)) << "\n";
    return r.status == SolveStatus::Converged ? 0 : 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solvers and experiments for the nonlinear norm equation"};
  app.require_subcommand(1);

  std::string problem_path, graph_path, out_path, solver_name, format_name = "csv";
  std::string example = "1", kind_name = "solver-compare";
  double tol = 1e-15, tau = 1.0, delta = 0.9, sigma = 0.001;
  int max_iter = 0, source = -1;
  std::size_t gen_p = 3, gen_q = 10, gen_n = 0, gen_m = 0;
  std::uint64_t seed = 1;
  int strictness = -1;  // -1 from file, 0 relaxed, 1 strict
  bool do_solve = false;

  auto* solve = app.add_subcommand("solve", "Solve a problem JSON file");
  solve->add_option("problem", problem_path, "problem JSON path")->required();
  solve->add_option("--solver", solver_name, "fp, rfpi, newton, newton2, sda");
  solve->add_option("--tol", tol, "residual tolerance");
  solve->add_option("--max-iter", max_iter, "iteration cap (0 = solver default)");
  auto* tau_opt_flag = solve->add_option("--tau", tau, "fixed relaxation parameter for rfpi");
  solve->add_option("--out", out_path, "write the run record here");
  solve->add_option("--format", format_name, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  solve->add_flag_callback("--strict", [&] { strictness = 1; },
                           "require every validation check to pass");
  solve->add_flag_callback("--no-strict", [&] { strictness = 0; },
                           "solve even when validation checks fail");

  auto* gen = app.add_subcommand("gen", "Generate a random problem JSON");
  gen->add_option("--example", example, "generator family: 1 banded, 2 dense")
      ->check(CLI::IsMember({"1", "2"}));
  gen->add_option("--p", gen_p, "negative-power block size (family 1)");
  gen->add_option("--q", gen_q, "nonnegative-power block size (family 1)");
  gen->add_option("--n", gen_n, "b support (family 1) / dimension (family 2)");
  gen->add_option("--m", gen_m, "instance dimension (family 1)");
  gen->add_option("--delta", delta, "1-norm margin of M (family 2)");
  gen->add_option("--sigma", sigma, "strictness margin for b (family 2)");
  gen->add_option("--seed", seed, "draw seed");
  gen->add_option("--out", out_path, "write problem JSON here (default stdout)");

  auto* exp = app.add_subcommand("experiment", "Run a canned experiment");
  exp->add_option("--kind", kind_name, "experiment kind")
      ->check(CLI::IsMember({"tau-sweep", "solver-compare", "laplacian-demo",
                             "perturbation-check", "custom"}));
  exp->add_option("--problem", problem_path, "problem JSON for --kind custom");
  exp->add_option("--n", gen_n, "instance dimension (0 = kind default)");
  exp->add_option("--seed", seed, "draw seed");
  exp->add_option("--tol", tol, "residual tolerance");
  exp->add_option("--max-iter", max_iter, "iteration cap (0 = solver default)");
  exp->add_option("--out", out_path, "write records here (default stdout)");
  exp->add_option("--format", format_name, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* lap = app.add_subcommand("laplacian", "Square-root factor of a graph Laplacian");
  lap->add_option("graph", graph_path, "edge list path")->required();
  lap->add_option("--source", source, "build v as that vertex's unit vector");
  lap->add_flag("--solve", do_solve, "also solve the double-root equation");
  lap->add_option("--tol", tol, "residual tolerance for --solve");
  lap->add_option("--out", out_path, "write the induced problem JSON here");

  CLI11_PARSE(app, argc, argv);

  try {
    const OutputFormat format =
        format_name == "json" ? OutputFormat::Json : OutputFormat::Csv;

    if (solve->parsed()) {
      SolverConfig cfg;
      cfg.tol = tol;
      cfg.max_iter = max_iter;
      return cmd_solve(problem_path, solver_name, cfg, !tau_opt_flag->empty(), tau,
                       out_path, format, strictness);
    }

    if (gen->parsed()) {
      ProblemInstance p = [&] {
        if (example == "1") {
          const std::size_t m = gen_m ? gen_m : 2000;
          const std::size_t n = gen_n ? gen_n : 400;
          return gen_example1(gen_p, gen_q, n, m, seed);
        }
        return gen_example2(gen_n ? gen_n : 1000, delta, sigma, seed);
      }();
      if (out_path.empty())
        std::cout << problem_to_json(p);
      else
        save_problem(p, out_path);
      return 0;
    }

    if (exp->parsed()) {
      ExperimentConfig cfg;
      cfg.n = gen_n;
      cfg.seed = seed;
      cfg.solver.tol = tol;
      cfg.solver.max_iter = max_iter;
      cfg.problem_file = problem_path;
      if (kind_name == "tau-sweep") cfg.kind = ExperimentKind::RfpiTauSweep;
      else if (kind_name == "solver-compare") cfg.kind = ExperimentKind::SolverCompare;
      else if (kind_name == "laplacian-demo") cfg.kind = ExperimentKind::LaplacianDemo;
      else if (kind_name == "perturbation-check") cfg.kind = ExperimentKind::PerturbationCheck;
      else cfg.kind = ExperimentKind::Custom;

      const auto records = run_experiment(cfg, std::cerr);
      emit_records(records, out_path, format, std::cout);
      return exit_code(records);
    }

    return cmd_laplacian(graph_path, source, do_solve, tol, out_path);
  } catch (const normeq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
