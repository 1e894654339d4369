#include "normeq/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "normeq/errors.hpp"
#include "normeq/generators.hpp"
#include "normeq/io.hpp"
#include "normeq/laplacian.hpp"

using namespace normeq;

namespace {

// Drops the wall_ms column (index 7 of 9), which is exempt from determinism.
std::string strip_wall(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    std::string kept;
    std::size_t field = 0, start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        if (field != 7) {
          if (!kept.empty()) kept += ',';
          kept += line.substr(start, i - start);
        }
        ++field;
        start = i + 1;
      }
    }
    out += kept + '\n';
  }
  return out;
}

void check_row_shape(const RunRecord& rec) {
  CHECK(rec.rows.size() == static_cast<std::size_t>(rec.iterations));
  for (std::size_t i = 0; i < rec.rows.size(); ++i)
    CHECK(rec.rows[i].k == static_cast<int>(i) + 1);
}

}  // namespace

TEST_CASE("tau sweep runs the full ladder and the tuned value wins") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::RfpiTauSweep;
  cfg.n = 60;
  cfg.seed = 1;

  std::ostringstream info;
  const auto records = run_experiment(cfg, info);
  REQUIRE(records.size() == 6);
  CHECK(info.str().find("tau(0) = ") != std::string::npos);

  const double expected[] = {0.1, 0.5, 0.9, records[3].tau, 1.5, 1.9};
  int best = 0;
  for (int i = 0; i < 6; ++i) {
    const auto& rec = records[i];
    CHECK(rec.experiment == "rfpi_tau_sweep");
    CHECK(rec.solver == "rfpi");
    CHECK(rec.tau == expected[i]);
    CHECK(rec.n == 60);
    CHECK(rec.status == SolveStatus::Converged);
    check_row_shape(rec);
    if (rec.iterations < records[best].iterations) best = i;
  }
  CHECK(records[3].tau > 1.0);
  CHECK(records[3].tau <= 2.0);
  CHECK(records[3].iterations == records[best].iterations);
  CHECK(exit_code(records) == 0);
}

TEST_CASE("solver comparison agrees across all four methods") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::SolverCompare;
  cfg.n = 40;
  cfg.seed = 3;

  std::ostringstream info;
  const auto records = run_experiment(cfg, info);
  REQUIRE(records.size() == 4);
  CHECK(records[0].solver == "fp");
  CHECK(records[1].solver == "rfpi");
  CHECK(records[2].solver == "newton");
  CHECK(records[3].solver == "sda");

  CHECK(records[0].tau == 1.0);
  CHECK(records[1].tau > 1.0);
  CHECK(std::isnan(records[2].tau));
  CHECK(std::isnan(records[3].tau));

  for (const auto& rec : records) {
    CHECK(rec.status == SolveStatus::Converged);
    CHECK(rec.final_residual <= 1e-13);
    CHECK(std::abs(rec.mu - records[0].mu) <= 1e-10);
    check_row_shape(rec);
  }
  CHECK(exit_code(records) == 0);
}

TEST_CASE("laplacian demo prints the factor and solves the double root") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::LaplacianDemo;

  std::ostringstream info;
  const auto records = run_experiment(cfg, info);
  REQUIRE(records.size() == 1);
  CHECK(records[0].solver == "newton2");
  CHECK(records[0].n == 5);
  CHECK(records[0].status == SolveStatus::Converged);
  CHECK(exit_code(records) == 0);

  const std::string text = info.str();
  CHECK(text.find("nu = 1") != std::string::npos);
  CHECK(text.find("y = 0.4472 0.1097 0.1667 0.1097 0.1667") != std::string::npos);
  CHECK(text.find("|x - y|_1 = ") != std::string::npos);
}

TEST_CASE("perturbation check reports slack and trial rows") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::PerturbationCheck;
  cfg.n = 20;
  cfg.seed = 5;

  std::ostringstream info;
  const auto records = run_experiment(cfg, info);
  REQUIRE(records.size() == 1);
  const auto& rec = records[0];
  CHECK(rec.solver == "perturbation");
  CHECK(std::isnan(rec.tau));
  CHECK(rec.iterations == 20);
  CHECK(rec.rows.size() == 20);
  CHECK(rec.status == SolveStatus::Converged);
  CHECK(rec.mu <= 1.0 + 1e-4);  // worst observed ratio within slack
  for (const auto& row : rec.rows) CHECK(row.mu > 0.0);

  CHECK(info.str().find("slack = ") != std::string::npos);
  CHECK(info.str().find("flagged = 0/20") != std::string::npos);
}

TEST_CASE("custom experiments load problem files") {
  std::ostringstream info;

  const std::string dense_path = "/tmp/normeq_custom_dense.json";
  save_problem(gen_example2(8, 0.9, 0.01, 2), dense_path);
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::Custom;
  cfg.problem_file = dense_path;
  const auto records = run_experiment(cfg, info);
  REQUIRE(records.size() == 4);
  for (const auto& rec : records) {
    CHECK(rec.experiment == "custom");
    CHECK(rec.status == SolveStatus::Converged);
  }
  std::remove(dense_path.c_str());

  const std::string lap_path = "/tmp/normeq_custom_lap.json";
  const Matrix l = laplacian_from_graph(demo_graph_undirected());
  const auto d = decompose(l, {1.0, 0.0, 0.0, 0.0});
  save_problem(lap_problem(d, rank_one_sqrt(d).v_sqrt), lap_path);
  cfg.problem_file = lap_path;
  const auto lap_records = run_experiment(cfg, info);
  REQUIRE(lap_records.size() == 1);
  CHECK(lap_records[0].solver == "newton2");
  CHECK(lap_records[0].status == SolveStatus::Converged);
  std::remove(lap_path.c_str());

  cfg.problem_file.clear();
  CHECK_THROWS_AS(run_experiment(cfg, info), DomainError);
}

TEST_CASE("exit code distinguishes failed runs") {
  CHECK(exit_code({}) == 1);
  RunRecord rec;
  rec.status = SolveStatus::Converged;
  CHECK(exit_code({rec}) == 0);
  rec.status = SolveStatus::MaxIterations;
  CHECK(exit_code({rec}) == 1);
}

TEST_CASE("csv output is deterministic apart from wall time") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::RfpiTauSweep;
  cfg.n = 60;
  cfg.seed = 2;

  std::ostringstream info1, info2, csv1, csv2;
  const auto first = run_experiment(cfg, info1);
  const auto second = run_experiment(cfg, info2);
  write_csv(csv1, first);
  write_csv(csv2, second);
  CHECK(info1.str() == info2.str());
  CHECK(strip_wall(csv1.str()) == strip_wall(csv2.str()));

  const std::string text = csv1.str();
  CHECK(text.rfind("experiment,solver,tau,n,k,residual,mu,wall_ms,status\n", 0) == 0);

  std::size_t expected_rows = 0;
  for (const auto& rec : first) expected_rows += rec.rows.size();
  std::size_t lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  CHECK(lines == expected_rows + 1);

  // Residual column carries the solver history verbatim.
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);  // header
  std::getline(in, line);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", first[0].rows[0].residual);
  CHECK(line.find(std::string(",1,") + buf + ",") != std::string::npos);
}

TEST_CASE("json output parses back with matching fields") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::SolverCompare;
  cfg.n = 30;
  cfg.seed = 4;

  std::ostringstream info, out;
  const auto records = run_experiment(cfg, info);
  write_json(out, records);

  const auto j = nlohmann::json::parse(out.str());
  REQUIRE(j.is_array());
  REQUIRE(j.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(j[i]["experiment"] == records[i].experiment);
    CHECK(j[i]["solver"] == records[i].solver);
    CHECK(j[i]["status"] == "Converged");
    CHECK(j[i]["iterations"].get<int>() == records[i].iterations);
    REQUIRE(j[i]["rows"].size() == records[i].rows.size());
    if (std::isnan(records[i].tau))
      CHECK(j[i]["tau"].is_null());
    else
      CHECK(j[i]["tau"].get<double>() == records[i].tau);
    if (!records[i].rows.empty()) {
      CHECK(j[i]["rows"][0]["k"].get<int>() == 1);
      CHECK(j[i]["rows"][0]["residual"].get<double>() == records[i].rows[0].residual);
      CHECK(j[i]["rows"].back()["mu"].get<double>() == records[i].rows.back().mu);
    }
  }
}
