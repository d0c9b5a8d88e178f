#include "lazysp/graph.hpp"

#include <stdexcept>
#include <string>

namespace lazysp {

Graph::Graph(std::size_t num_vertices, bool directed)
    : directed_(directed), out_(num_vertices), in_(num_vertices) {}

Graph::Graph(std::size_t num_vertices, bool directed, std::span<const Edge> edges)
    : Graph(num_vertices, directed) {
  edges_.reserve(edges.size());
  for (const Edge& e : edges) add_edge(e.u, e.v);
}

EdgeId Graph::add_edge(VertexId u, VertexId v) {
  if (!has_vertex(u) || !has_vertex(v))
    throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(u) + ", " +
                                std::to_string(v) + ")");
  if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));

  const auto id = static_cast<EdgeId>(edges_.size());
  edges_.push_back({u, v});
  out_[static_cast<std::size_t>(u)].push_back({id, v});
  in_[static_cast<std::size_t>(v)].push_back({id, u});
  if (!directed_) {
    out_[static_cast<std::size_t>(v)].push_back({id, u});
    in_[static_cast<std::size_t>(u)].push_back({id, v});
  }
  return id;
}

VertexId Graph::other(EdgeId e, VertexId from) const {
  const Edge& ed = edge(e);
  if (ed.u == from) return ed.v;
  if (!directed_ && ed.v == from) return ed.u;
  throw std::invalid_argument("vertex " + std::to_string(from) + " is not a source of edge " +
                              std::to_string(e));
}

void validate_query(const Graph& g, Query q) {
  if (!g.has_vertex(q.start) || !g.has_vertex(q.goal))
    throw std::invalid_argument("query vertices out of range: start=" + std::to_string(q.start) +
                                " goal=" + std::to_string(q.goal));
}

void validate_path(const Graph& g, Query q, const Path& p) {
  if (p.vertices.empty()) throw std::invalid_argument("path has no vertices");
  if (p.vertices.size() != p.edges.size() + 1)
    throw std::invalid_argument("path vertex/edge count mismatch");
  if (p.vertices.front() != q.start || p.vertices.back() != q.goal)
    throw std::invalid_argument("path endpoints do not match the query");
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    const EdgeId e = p.edges[i];
    if (!g.has_edge(e)) throw std::invalid_argument("path uses unknown edge");
    if (g.other(e, p.vertices[i]) != p.vertices[i + 1])
      throw std::invalid_argument("path edge " + std::to_string(e) + " does not join consecutive vertices");
  }
}

double path_length(const Path& p, std::span<const double> weights) {
  double total = 0.0;
  for (EdgeId e : p.edges) total += weights[static_cast<std::size_t>(e)];
  return total;
}

}  // namespace lazysp
