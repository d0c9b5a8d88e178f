#include "lazysp/problem.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lazysp {

namespace {

[[noreturn]] void parse_error(std::size_t line_no, const std::string& what) {
  throw std::runtime_error("graph file line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

std::string format_weight(double w) {
  if (w == kInfinity) return "inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, w);
  if (ec != std::errc{}) throw std::runtime_error("cannot format weight");
  return std::string(buf, ptr);
}

double parse_weight(const std::string& token) {
  if (token == "inf" || token == "+inf") return kInfinity;
  double w = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), w);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw std::invalid_argument("bad weight '" + token + "'");
  if (!(w >= 0.0)) throw std::invalid_argument("negative weight '" + token + "'");
  return w;
}

GraphFile read_graph(std::istream& in) {
  GraphFile out;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t n_edges = 0;
  std::vector<Edge> edges;
  std::vector<char> seen;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string kind;
    if (!(ss >> kind)) continue;
    if (kind[0] == '#') {
      std::string word;
      Query q;
      if (ss >> word && word == "query" && ss >> q.start >> q.goal) out.query = q;
      continue;
    }
    if (kind == "graph") {
      if (have_header) parse_error(line_no, "duplicate header");
      std::size_t n = 0;
      std::string dir;
      if (!(ss >> n >> n_edges >> dir)) parse_error(line_no, "malformed header");
      if (dir != "directed" && dir != "undirected") parse_error(line_no, "expected directed|undirected");
      out.graph = Graph(n, dir == "directed");
      edges.assign(n_edges, Edge{});
      seen.assign(n_edges, 0);
      out.estimates.assign(n_edges, 0.0);
      out.true_weights.assign(n_edges, 0.0);
      have_header = true;
    } else if (kind == "edge") {
      if (!have_header) parse_error(line_no, "edge before header");
      long long id = -1;
      Edge e;
      std::string west, wtrue;
      if (!(ss >> id >> e.u >> e.v >> west >> wtrue)) parse_error(line_no, "malformed edge record");
      if (id < 0 || static_cast<std::size_t>(id) >= n_edges) parse_error(line_no, "edge id out of range");
      if (seen[static_cast<std::size_t>(id)]) parse_error(line_no, "duplicate edge id");
      seen[static_cast<std::size_t>(id)] = 1;
      edges[static_cast<std::size_t>(id)] = e;
      try {
        out.estimates[static_cast<std::size_t>(id)] = parse_weight(west);
        out.true_weights[static_cast<std::size_t>(id)] = parse_weight(wtrue);
      } catch (const std::invalid_argument& ex) {
        parse_error(line_no, ex.what());
      }
    } else {
      parse_error(line_no, "unknown record '" + kind + "'");
    }
  }
  if (!have_header) throw std::runtime_error("graph file has no header");
  for (std::size_t i = 0; i < n_edges; ++i)
    if (!seen[i]) throw std::runtime_error("graph file is missing edge " + std::to_string(i));
  for (const Edge& e : edges) {
    try {
      out.graph.add_edge(e.u, e.v);
    } catch (const std::invalid_argument& ex) {
      throw std::runtime_error(std::string("graph file: ") + ex.what());
    }
  }
  if (out.query) validate_query(out.graph, *out.query);
  return out;
}

GraphFile read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g, const std::vector<double>& estimates,
                 const std::vector<double>& true_weights, std::optional<Query> query) {
  out << "graph " << g.num_vertices() << ' ' << g.num_edges() << ' '
      << (g.directed() ? "directed" : "undirected") << '\n';
  if (query) out << "# query " << query->start << ' ' << query->goal << '\n';
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edge(static_cast<EdgeId>(i));
    out << "edge " << i << ' ' << e.u << ' ' << e.v << ' ' << format_weight(estimates[i]) << ' '
        << format_weight(true_weights[i]) << '\n';
  }
}

}  // namespace lazysp
