#include "normeq/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>
#include <variant>

#include "json.hpp"
#include "normeq/errors.hpp"
#include "normeq/laplacian.hpp"

namespace normeq {

namespace {

using nlohmann::json;

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void append_reals(std::string& out, const Vector& v) {
  out += '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += fmt17(v[i]);
  }
  out += ']';
}

void append_matrix(std::string& out, const Matrix& m) {
  out += '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += ',';
    out += '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += fmt17(m(i, j));
    }
    out += ']';
  }
  out += ']';
}

Vector parse_vector(const json& j, const char* field) {
  if (!j.is_array()) throw IoError(std::string("problem JSON: ") + field + " must be an array");
  Vector v;
  v.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number()) throw IoError(std::string("problem JSON: ") + field + " must hold numbers");
    v.push_back(e.get<double>());
  }
  return v;
}

Matrix parse_matrix(const json& j) {
  if (!j.is_array() || j.empty()) throw IoError("problem JSON: matrix must be a nonempty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& row = j[i];
    if (!row.is_array() || row.size() != cols)
      throw IoError("problem JSON: matrix rows must be arrays of equal length");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!row[k].is_number()) throw IoError("problem JSON: matrix must hold numbers");
      m(i, k) = row[k].get<double>();
    }
  }
  return m;
}

}  // namespace

std::string problem_to_json(const ProblemInstance& p) {
  std::string out = "{\"kind\":\"";
  if (p.is_toeplitz()) {
    const auto& a = std::get<ToeplitzOrigin>(p.origin).symbol;
    out += "toeplitz\",\"symbol\":{\"lo\":" + std::to_string(a.lo) + ",\"coeffs\":";
    append_reals(out, a.coeffs);
    out += '}';
  } else if (p.is_dense()) {
    out += "dense\",\"matrix\":";
    append_matrix(out, std::get<DenseOrigin>(p.origin).m);
  } else {
    out += "laplacian\",\"matrix\":";
    append_matrix(out, std::get<LaplacianOrigin>(p.origin).l);
  }
  out += ",\"b\":";
  append_reals(out, p.is_laplacian() ? std::get<LaplacianOrigin>(p.origin).v : p.b);
  out += ",\"strict\":";
  out += p.validation.strict ? "true" : "false";
  out += "}\n";
  return out;
}

ProblemInstance problem_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("problem JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw IoError("problem JSON: missing string field 'kind'");
  if (!j.contains("b")) throw IoError("problem JSON: missing field 'b'");

  const std::string kind = j["kind"].get<std::string>();
  Vector b = parse_vector(j["b"], "b");
  const bool strict = j.value("strict", true);

  if (kind == "toeplitz") {
    if (!j.contains("symbol") || !j["symbol"].is_object() ||
        !j["symbol"].contains("lo") || !j["symbol"].contains("coeffs") ||
        !j["symbol"]["lo"].is_number_integer())
      throw IoError("problem JSON: toeplitz kind needs symbol.lo and symbol.coeffs");
    const auto a = make_symbol(j["symbol"]["lo"].get<int>(),
                               parse_vector(j["symbol"]["coeffs"], "symbol.coeffs"));
    return build_toeplitz_problem(a, std::move(b), strict);
  }
  if (kind == "dense") {
    if (!j.contains("matrix")) throw IoError("problem JSON: dense kind needs 'matrix'");
    return build_dense_problem(parse_matrix(j["matrix"]), std::move(b), strict);
  }
  if (kind == "laplacian") {
    if (!j.contains("matrix")) throw IoError("problem JSON: laplacian kind needs 'matrix'");
    const auto d = decompose(parse_matrix(j["matrix"]), b);
    return lap_problem(d, rank_one_sqrt(d).v_sqrt);
  }
  throw IoError("problem JSON: unknown kind '" + kind + "'");
}

ProblemInstance load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return problem_from_json(ss.str());
}

void save_problem(const ProblemInstance& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << problem_to_json(p);
  if (!out) throw IoError("write failed for " + path);
}

Graph parse_edge_list(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("edge list: empty input");

  Graph g;
  {
    std::istringstream hs(line);
    std::string hash, mode, nfield;
    hs >> hash >> mode >> nfield;
    if (hash != "#" || (mode != "directed" && mode != "undirected") ||
        nfield.rfind("n=", 0) != 0)
      throw IoError("edge list: header must be '# directed|undirected n=<count>'");
    g.directed = mode == "directed";
    try {
      g.n = std::stoul(nfield.substr(2));
    } catch (...) {
      throw IoError("edge list: bad vertex count in header");
    }
  }

  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == '#') continue;

    GraphEdge e;
    try {
      e.u = std::stoul(first);
    } catch (...) {
      throw IoError("edge list line " + std::to_string(lineno) + ": bad vertex");
    }
    if (!(ls >> e.v)) throw IoError("edge list line " + std::to_string(lineno) + ": missing endpoint");
    std::string rest;
    if (!(ls >> e.w)) {
      ls.clear();
      if (ls >> rest && rest[0] != '#')
        throw IoError("edge list line " + std::to_string(lineno) + ": bad weight");
      e.w = 1.0;
    } else if (ls >> rest && rest[0] != '#') {
      throw IoError("edge list line " + std::to_string(lineno) + ": unexpected trailing token");
    }
    if (e.u >= g.n || e.v >= g.n)
      throw IoError("edge list line " + std::to_string(lineno) + ": vertex out of range");
    if (e.u == e.v)
      throw IoError("edge list line " + std::to_string(lineno) + ": self loops not supported");
    if (!(e.w > 0.0))
      throw IoError("edge list line " + std::to_string(lineno) + ": weight must be positive");
    g.edges.push_back(e);
  }
  return g;
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return parse_edge_list(in);
}

Matrix laplacian_from_graph(const Graph& g) {
  Matrix l(g.n, g.n);
  for (const auto& e : g.edges) {
    l(e.u, e.v) -= e.w;
    l(e.u, e.u) += e.w;
    if (!g.directed) {
      l(e.v, e.u) -= e.w;
      l(e.v, e.v) += e.w;
    }
  }
  return l;
}

Graph demo_graph_undirected() {
  Graph g;
  g.n = 4;
  g.edges = {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {2, 3, 1.0}};
  return g;
}

Graph demo_graph_directed() {
  Graph g;
  g.directed = true;
  g.n = 5;
  g.edges = {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {0, 4, 1.0}, {1, 0, 1.0},
             {1, 2, 1.0}, {1, 4, 1.0}, {2, 0, 1.0}, {2, 3, 1.0}, {3, 0, 1.0},
             {3, 2, 1.0}, {3, 4, 1.0}, {4, 0, 1.0}, {4, 1, 1.0}};
  return g;
}

}  // namespace normeq
