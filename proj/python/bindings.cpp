// Python surface for the solver library. Matrices cross the boundary as
// nested lists; everything heavy stays on the C++ side.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "normeq/errors.hpp"
#include "normeq/generators.hpp"
#include "normeq/io.hpp"
#include "normeq/laplacian.hpp"
#include "normeq/perturbation.hpp"
#include "normeq/problem.hpp"
#include "normeq/scalar_analysis.hpp"
#include "normeq/solvers.hpp"
#include "normeq/symbol.hpp"

namespace py = pybind11;
using namespace normeq;

namespace {

Matrix mat_from(const std::vector<std::vector<double>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<double>> mat_to(const Matrix& m) {
  std::vector<std::vector<double>> rows(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return rows;
}

TauRule parse_tau_rule(const std::string& name) {
  if (name == "plain") return TauRule::PlainFixedPoint;
  if (name == "fixed") return TauRule::Fixed;
  if (name == "opt") return TauRule::OptAt;
  throw std::invalid_argument("tau_rule must be plain, fixed, or opt");
}

std::string problem_kind(const ProblemInstance& p) {
  if (p.is_toeplitz()) return "toeplitz";
  if (p.is_dense()) return "dense";
  return "laplacian";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Solvers for the nonlinear norm equation A x - |x|_1 x = b";

  py::register_exception<Error>(m, "NormeqError");

  py::class_<ValidationCheck>(m, "ValidationCheck")
      .def_readonly("name", &ValidationCheck::name)
      .def_readonly("passed", &ValidationCheck::passed)
      .def_readonly("value", &ValidationCheck::value)
      .def_readonly("note", &ValidationCheck::note);

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("strict", &ValidationReport::strict)
      .def_readonly("beta", &ValidationReport::beta)
      .def_readonly("checks", &ValidationReport::checks)
      .def_readonly("note", &ValidationReport::note)
      .def("all_passed", &ValidationReport::all_passed);

  py::class_<ProblemInstance>(m, "ProblemInstance")
      .def_property_readonly("A", [](const ProblemInstance& p) { return mat_to(p.A); })
      .def_readonly("b", &ProblemInstance::b)
      .def_readonly("beta", &ProblemInstance::beta)
      .def_readonly("validation", &ProblemInstance::validation)
      .def_property_readonly("kind", &problem_kind)
      .def("__len__", &ProblemInstance::size)
      .def("__repr__", [](const ProblemInstance& p) {
        return "<ProblemInstance kind=" + problem_kind(p) + " n=" +
               std::to_string(p.size()) + ">";
      });

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("x", &SolveResult::x)
      .def_readonly("mu", &SolveResult::mu)
      .def_readonly("iterations", &SolveResult::iterations)
      .def_readonly("residual_history", &SolveResult::residual_history)
      .def_readonly("mu_history", &SolveResult::mu_history)
      .def_readonly("detail", &SolveResult::detail)
      .def_readonly("tol_used", &SolveResult::tol_used)
      .def_property_readonly(
          "status", [](const SolveResult& r) { return std::string(to_string(r.status)); })
      .def_property_readonly(
          "converged", [](const SolveResult& r) { return r.status == SolveStatus::Converged; })
      .def("__repr__", [](const SolveResult& r) {
        return std::string("<SolveResult ") + to_string(r.status) + " mu=" +
               std::to_string(r.mu) + " iterations=" + std::to_string(r.iterations) + ">";
      });

  py::class_<LaplacianDecomposition>(m, "LaplacianDecomposition")
      .def_property_readonly("l", [](const LaplacianDecomposition& d) { return mat_to(d.l); })
      .def_property_readonly("w", [](const LaplacianDecomposition& d) { return mat_to(d.w); })
      .def_readonly("v", &LaplacianDecomposition::v)
      .def_readonly("nu", &LaplacianDecomposition::nu);

  py::class_<SqrtResult>(m, "SqrtResult")
      .def_property_readonly("v_sqrt", [](const SqrtResult& r) { return mat_to(r.v_sqrt); })
      .def_readonly("y", &SqrtResult::y)
      .def_readonly("iterations", &SqrtResult::iterations)
      .def_readonly("defect", &SqrtResult::defect);

  py::class_<PerturbationBound>(m, "PerturbationBound")
      .def_readonly("kappa", &PerturbationBound::kappa)
      .def_readonly("mu_x", &PerturbationBound::mu_x)
      .def_readonly("inv_norm", &PerturbationBound::inv_norm)
      .def_readonly("da_norm", &PerturbationBound::da_norm)
      .def_readonly("db_norm", &PerturbationBound::db_norm);

  py::class_<PerturbationTrial>(m, "PerturbationTrial")
      .def_readonly("da_norm", &PerturbationTrial::da_norm)
      .def_readonly("db_norm", &PerturbationTrial::db_norm)
      .def_readonly("dx_norm", &PerturbationTrial::dx_norm)
      .def_readonly("kappa", &PerturbationTrial::kappa)
      .def_readonly("ratio", &PerturbationTrial::ratio)
      .def_readonly("flagged", &PerturbationTrial::flagged);

  py::class_<PerturbationReport>(m, "PerturbationReport")
      .def_readonly("eps", &PerturbationReport::eps)
      .def_readonly("slack", &PerturbationReport::slack)
      .def_readonly("seed", &PerturbationReport::seed)
      .def_readonly("rejected_draws", &PerturbationReport::rejected_draws)
      .def_readonly("trials", &PerturbationReport::trials)
      .def("all_passed", &PerturbationReport::all_passed);

  m.def(
      "build_toeplitz_problem",
      [](int lo, std::vector<double> coeffs, Vector b, bool strict) {
        return build_toeplitz_problem(make_symbol(lo, std::move(coeffs)), std::move(b),
                                      strict);
      },
      py::arg("lo"), py::arg("coeffs"), py::arg("b"), py::arg("strict") = true,
      "Banded problem from symbol coefficients: A = (2 - |a|_W) I - T_n(a).");

  m.def(
      "build_dense_problem",
      [](const std::vector<std::vector<double>>& rows, Vector b, bool strict) {
        return build_dense_problem(mat_from(rows), std::move(b), strict);
      },
      py::arg("m"), py::arg("b"), py::arg("strict") = true,
      "Dense problem A = (2 - |M|_1) I - M.");

  m.def("residual", &residual, py::arg("p"), py::arg("x"), "|A x - |x|_1 x - b|_1.");

  m.def(
      "scalar_f", [](const ProblemInstance& p, double mu) { return MuFunctions(p).f(mu); },
      py::arg("p"), py::arg("mu"), "|(A - mu I)^{-1} b|_1.");
  m.def(
      "scalar_fprime",
      [](const ProblemInstance& p, double mu) { return MuFunctions(p).fprime(mu); },
      py::arg("p"), py::arg("mu"));
  m.def(
      "mu_star",
      [](const ProblemInstance& p, double tol) { return bisect_mu_star(MuFunctions(p), tol); },
      py::arg("p"), py::arg("tol") = 1e-14, "Bisection root of f(mu) - mu on [0, beta].");
  m.def(
      "tau_opt",
      [](const ProblemInstance& p, double mu0) { return tau_opt(MuFunctions(p), mu0); },
      py::arg("p"), py::arg("mu0") = 0.0, "1 / (1 - f'(mu0)).");
  m.def(
      "tau_admissible_max",
      [](const ProblemInstance& p) { return MuFunctions(p).tau_admissible_max(); },
      py::arg("p"));

  m.def(
      "solve_rfpi",
      [](const ProblemInstance& p, double tol, int max_iter, const std::string& tau_rule,
         double tau, double mu0) {
        SolverConfig cfg;
        cfg.tol = tol;
        cfg.max_iter = max_iter;
        cfg.tau_rule = parse_tau_rule(tau_rule);
        cfg.tau = tau;
        cfg.mu0 = mu0;
        return solve_rfpi(p, cfg);
      },
      py::arg("p"), py::arg("tol") = 1e-15, py::arg("max_iter") = 0,
      py::arg("tau_rule") = "plain", py::arg("tau") = 1.0, py::arg("mu0") = 0.0,
      "Relaxed iteration x <- (A - mu I)^{-1} b, mu <- tau |x|_1 + (1 - tau) mu.");

  m.def(
      "solve_newton",
      [](const ProblemInstance& p, double tol, int max_iter, double mu0, int multiplicity) {
        SolverConfig cfg;
        cfg.tol = tol;
        cfg.max_iter = max_iter;
        cfg.mu0 = mu0;
        cfg.newton_multiplicity = multiplicity;
        return solve_newton(p, cfg);
      },
      py::arg("p"), py::arg("tol") = 1e-15, py::arg("max_iter") = 0, py::arg("mu0") = 0.0,
      py::arg("multiplicity") = 1, "Scalar Newton on g(mu) = f(mu) - mu.");

  m.def(
      "solve_sda",
      [](const ProblemInstance& p, double tol, int max_iter) {
        SolverConfig cfg;
        cfg.tol = tol;
        cfg.max_iter = max_iter;
        return solve_sda(p, cfg);
      },
      py::arg("p"), py::arg("tol") = 1e-15, py::arg("max_iter") = 0,
      "Doubling recurrence with certified contraction monitors.");

  m.def(
      "symbol_sqrt",
      [](int lo, std::vector<double> coeffs, double tol) {
        const auto g = symbol_sqrt(make_symbol(lo, std::move(coeffs)), tol);
        return py::make_tuple(g.lo, g.coeffs);
      },
      py::arg("lo"), py::arg("coeffs"), py::arg("tol") = 1e-13,
      "Coefficients of the g solving a = 2g - g^2; returns (lo, coeffs).");

  m.def(
      "decompose",
      [](const std::vector<std::vector<double>>& l, Vector v) {
        return decompose(mat_from(l), std::move(v));
      },
      py::arg("l"), py::arg("v"), "Split L = W - 1 v^T with W an invertible M-matrix.");
  m.def(
      "suggest_v",
      [](const std::vector<std::vector<double>>& l) { return suggest_v(mat_from(l)); },
      py::arg("l"));
  m.def(
      "rank_one_sqrt",
      [](const LaplacianDecomposition& d, double tol) { return rank_one_sqrt(d, tol); },
      py::arg("d"), py::arg("tol") = 1e-13, "L^{1/2} = V - 1 y^T with V = W^{1/2}.");
  m.def(
      "solve_lap_equation",
      [](const LaplacianDecomposition& d, double tol, int max_iter) {
        SolverConfig cfg;
        cfg.tol = tol;
        cfg.max_iter = max_iter;
        return solve_lap_equation(d, cfg);
      },
      py::arg("d"), py::arg("tol") = 1e-15, py::arg("max_iter") = 0,
      "Solve (nu I + V^T) x - |x|_1 x = v; x equals the rank-one direction y.");
  m.def(
      "load_graph_laplacian",
      [](const std::string& path) { return mat_to(laplacian_from_graph(load_edge_list(path))); },
      py::arg("path"), "Laplacian of an edge-list file.");

  m.def("gen_example1", &gen_example1, py::arg("p") = 3, py::arg("q") = 10,
        py::arg("n") = 400, py::arg("m") = 2000, py::arg("seed") = 1,
        "Banded family: random square-rooted symbol, b scaled to half the square margin.");
  m.def("gen_example2", &gen_example2, py::arg("n"), py::arg("delta"), py::arg("sigma"),
        py::arg("seed"), "Dense family with |M|_1 = 1/(1 + delta).");

  m.def(
      "perturbation_bound",
      [](const ProblemInstance& p, const Vector& x, double da_norm, double db_norm) {
        return bound(p, x, da_norm, db_norm);
      },
      py::arg("p"), py::arg("x"), py::arg("da_norm"), py::arg("db_norm"),
      "First-order bound |dx|_1 <= kappa for data perturbed by (da, db).");
  m.def("verify_bound", &verify_bound, py::arg("p"), py::arg("eps"), py::arg("trials"),
        py::arg("seed"), "Monte-Carlo check of the bound with relative bumps of size eps.");

  m.def("load_problem", &load_problem, py::arg("path"));
  m.def("save_problem", &save_problem, py::arg("p"), py::arg("path"));
}
