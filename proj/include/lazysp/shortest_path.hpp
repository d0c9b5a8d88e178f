#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lazysp/graph.hpp"

namespace lazysp {

struct SearchResult {
  std::optional<Path> path;
  double length = kInfinity;

  bool found() const { return path.has_value(); }
};

/// Scratch buffers for repeated searches on graphs of the same size.
/// One per thread; not shareable.
struct SearchWorkspace {
  struct Entry {
    double dist;
    int hops;
    VertexId v;
  };
  std::vector<double> dist;
  std::vector<int> hops;
  std::vector<char> settled;
  std::vector<Entry> heap;
};

/// Reverse Dijkstra from `goal`: dist[v] is the shortest v->goal length
/// under `weights`, hops[v] the fewest edges among such paths. +inf edges
/// are never relaxed. If `stop_at` is a vertex, the search stops once every
/// vertex with dist <= dist[stop_at] is settled; other entries are then only
/// upper bounds and remain unsettled.
void search_to_goal(const Graph& g, VertexId goal, std::span<const double> weights,
                    SearchWorkspace& ws, VertexId stop_at = kNoVertex);

/// Exact goal distances under `weights` (+inf when unreachable).
std::vector<double> distances_to_goal(const Graph& g, VertexId goal, std::span<const double> weights);

/// Minimal-length start->goal path. Among equal-length paths the one with
/// the lexicographically smallest vertex sequence is returned (parallel
/// edges: smallest edge id); zero-weight stretches are walked with the
/// fewest edges so the walk is always acyclic. No path when every
/// start->goal path has infinite length.
SearchResult shortest_path(const Graph& g, Query q, std::span<const double> weights);
SearchResult shortest_path(const Graph& g, Query q, std::span<const double> weights,
                           SearchWorkspace& ws);

/// Every simple minimal-length path (tight edges only, no vertex repeated).
/// Intended for small graphs. Empty when no finite path exists.
std::vector<Path> all_shortest_paths(const Graph& g, Query q, std::span<const double> weights);

}  // namespace lazysp
