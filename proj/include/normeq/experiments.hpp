#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "normeq/solvers.hpp"

namespace normeq {

enum class ExperimentKind {
  RfpiTauSweep,       // relaxed iteration across a fixed tau ladder plus tau(0)
  SolverCompare,      // fp, rfpi(tau(0)), newton, sda on one banded draw
  LaplacianDemo,      // square-root factor and double-root solve on the 5-node demo
  PerturbationCheck,  // bound-verification trials on a dense draw
  Custom,             // problem file supplied by the caller
};

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::SolverCompare;
  std::size_t n = 0;  // instance dimension, 0 = per-kind default
  std::uint64_t seed = 1;
  SolverConfig solver;       // tol / max_iter shared by every run
  std::string problem_file;  // read by Custom
};

struct IterationRow {
  int k = 0;
  double residual = 0.0;
  double mu = 0.0;
};

// One solver execution. rows holds (k, residual_history[k-1], mu_history[k])
// for k = 1..iterations, so the CSV row count equals the iteration count.
struct RunRecord {
  std::string experiment;
  std::string solver;
  double tau = 0.0;  // NaN when the run has no relaxation parameter
  std::size_t n = 0;
  int iterations = 0;
  double wall_ms = 0.0;  // excluded from the determinism contract
  double final_residual = 0.0;
  double mu = 0.0;
  SolveStatus status = SolveStatus::MaxIterations;
  std::vector<IterationRow> rows;
};

// Runs the configured experiment; human-readable notes (the demo's y vector,
// perturbation slack) go to info. Deterministic in (kind, n, seed, solver)
// except for wall_ms.
std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg, std::ostream& info);

// Columns: experiment,solver,tau,n,k,residual,mu,wall_ms,status.
void write_csv(std::ostream& out, const std::vector<RunRecord>& records);
void write_json(std::ostream& out, const std::vector<RunRecord>& records);

// 0 iff every record converged.
int exit_code(const std::vector<RunRecord>& records);

}  // namespace normeq
