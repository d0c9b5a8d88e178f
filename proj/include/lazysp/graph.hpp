#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace lazysp {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr VertexId kNoVertex = -1;

struct Edge {
  VertexId u = kNoVertex;
  VertexId v = kNoVertex;
};

// One traversal direction of an edge. For out-lists `vertex` is the head,
// for in-lists it is the tail.
struct Arc {
  EdgeId edge = -1;
  VertexId vertex = kNoVertex;
};

/// Explicit graph with dense vertex ids 0..n-1 and dense edge ids 0..m-1.
///
/// An undirected graph stores each edge once; both endpoints list it in
/// their out- and in-arcs, so traversal in either direction shares one
/// edge id (and therefore one evaluation).
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t num_vertices, bool directed);
  Graph(std::size_t num_vertices, bool directed, std::span<const Edge> edges);

  /// Appends an edge and returns its id. Throws on self-loops or
  /// out-of-range endpoints.
  EdgeId add_edge(VertexId u, VertexId v);

  std::size_t num_vertices() const { return out_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  bool directed() const { return directed_; }

  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  std::span<const Edge> edges() const { return edges_; }

  std::span<const Arc> out_arcs(VertexId v) const { return out_[static_cast<std::size_t>(v)]; }
  std::span<const Arc> in_arcs(VertexId v) const { return in_[static_cast<std::size_t>(v)]; }

  bool has_vertex(VertexId v) const {
    return v >= 0 && static_cast<std::size_t>(v) < out_.size();
  }
  bool has_edge(EdgeId e) const {
    return e >= 0 && static_cast<std::size_t>(e) < edges_.size();
  }

  // Endpoint of `e` opposite to `from`. For directed edges `from` must be
  // the tail.
  VertexId other(EdgeId e, VertexId from) const;

 private:
  bool directed_ = false;
  std::vector<Edge> edges_;
  std::vector<std::vector<Arc>> out_;
  std::vector<std::vector<Arc>> in_;
};

struct Query {
  VertexId start = kNoVertex;
  VertexId goal = kNoVertex;
};

void validate_query(const Graph& g, Query q);

/// Vertex sequence plus the edge ids joining consecutive vertices.
/// `vertices.size() == edges.size() + 1` for any non-empty path.
struct Path {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;

  bool empty() const { return edges.empty(); }
  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;
};

/// Throws std::invalid_argument unless `p` walks from q.start to q.goal
/// along edges of `g` (respecting direction for directed graphs).
void validate_path(const Graph& g, Query q, const Path& p);

/// Sum of weights over the path's edges; +inf absorbs, empty path is 0.
double path_length(const Path& p, std::span<const double> weights);

}  // namespace lazysp
