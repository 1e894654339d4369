#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "normeq/problem.hpp"

namespace normeq {

struct GraphEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double w = 1.0;
};

struct Graph {
  bool directed = false;
  std::size_t n = 0;
  std::vector<GraphEdge> edges;
};

// Text format: header "# directed n=<count>" or "# undirected n=<count>",
// then one "u v [weight]" line per edge, 0-based, weights positive (default
// 1). Later '#' lines and blank lines are skipped. Self loops are rejected.
Graph parse_edge_list(std::istream& in);
Graph load_edge_list(const std::string& path);

// Degree minus adjacency; out-degrees on directed graphs, so rows always sum
// to zero. Parallel edges accumulate.
Matrix laplacian_from_graph(const Graph& g);

// Built-in demo graphs, mirrored verbatim by the files under data/.
Graph demo_graph_undirected();  // 4 nodes, 4 edges
Graph demo_graph_directed();    // 5 nodes, 14 arcs

// Problem schema: {"kind":"toeplitz"|"dense"|"laplacian", "symbol":{"lo":..,
// "coeffs":[..]}, "matrix":[[..]], "b":[..], "strict":bool}. Writes carry 17
// significant digits so doubles survive the round trip bit-exactly. A
// laplacian file stores (L, v) in (matrix, b) and loading re-derives the
// square-root factor, so construction errors surface at load time.
std::string problem_to_json(const ProblemInstance& p);
ProblemInstance problem_from_json(const std::string& text);

ProblemInstance load_problem(const std::string& path);
void save_problem(const ProblemInstance& p, const std::string& path);

}  // namespace normeq
