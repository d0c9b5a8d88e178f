#include "lazysp/shortest_path.hpp"

#include <algorithm>
#include <functional>

namespace lazysp {

namespace {

bool heap_after(const SearchWorkspace::Entry& a, const SearchWorkspace::Entry& b) {
  if (a.dist != b.dist) return a.dist > b.dist;
  if (a.hops != b.hops) return a.hops > b.hops;
  return a.v > b.v;
}

std::size_t idx(VertexId v) { return static_cast<std::size_t>(v); }

}  // namespace

void search_to_goal(const Graph& g, VertexId goal, std::span<const double> weights,
                    SearchWorkspace& ws, VertexId stop_at) {
  const std::size_t n = g.num_vertices();
  ws.dist.assign(n, kInfinity);
  ws.hops.assign(n, 0);
  ws.settled.assign(n, 0);
  ws.heap.clear();

  ws.dist[idx(goal)] = 0.0;
  ws.heap.push_back({0.0, 0, goal});
  double bound = kInfinity;

  while (!ws.heap.empty()) {
    std::pop_heap(ws.heap.begin(), ws.heap.end(), heap_after);
    const auto top = ws.heap.back();
    ws.heap.pop_back();
    const std::size_t v = idx(top.v);
    if (ws.settled[v]) continue;
    if (top.dist != ws.dist[v] || top.hops != ws.hops[v]) continue;
    if (top.dist > bound) break;
    ws.settled[v] = 1;
    if (top.v == stop_at) bound = top.dist;

    for (const Arc& arc : g.in_arcs(top.v)) {
      const double w = weights[static_cast<std::size_t>(arc.edge)];
      if (w == kInfinity) continue;
      const std::size_t u = idx(arc.vertex);
      if (ws.settled[u]) continue;
      const double nd = top.dist + w;
      const int nh = top.hops + 1;
      if (nd < ws.dist[u] || (nd == ws.dist[u] && nh < ws.hops[u])) {
        ws.dist[u] = nd;
        ws.hops[u] = nh;
        ws.heap.push_back({nd, nh, arc.vertex});
        std::push_heap(ws.heap.begin(), ws.heap.end(), heap_after);
      }
    }
  }
}

std::vector<double> distances_to_goal(const Graph& g, VertexId goal, std::span<const double> weights) {
  SearchWorkspace ws;
  search_to_goal(g, goal, weights, ws);
  return std::move(ws.dist);
}

SearchResult shortest_path(const Graph& g, Query q, std::span<const double> weights) {
  SearchWorkspace ws;
  return shortest_path(g, q, weights, ws);
}

SearchResult shortest_path(const Graph& g, Query q, std::span<const double> weights,
                           SearchWorkspace& ws) {
  validate_query(g, q);
  search_to_goal(g, q.goal, weights, ws, q.start);
  SearchResult result;
  if (!ws.settled[idx(q.start)]) return result;

  Path p;
  p.vertices.push_back(q.start);
  VertexId v = q.start;
  while (v != q.goal) {
    const double dv = ws.dist[idx(v)];
    const int hv = ws.hops[idx(v)];
    VertexId best_u = kNoVertex;
    EdgeId best_e = -1;
    for (const Arc& arc : g.out_arcs(v)) {
      const std::size_t u = idx(arc.vertex);
      if (!ws.settled[u]) continue;
      const double w = weights[static_cast<std::size_t>(arc.edge)];
      if (w == kInfinity || w + ws.dist[u] != dv) continue;
      if (!(ws.dist[u] < dv || ws.hops[u] < hv)) continue;
      if (best_u == kNoVertex || arc.vertex < best_u || (arc.vertex == best_u && arc.edge < best_e)) {
        best_u = arc.vertex;
        best_e = arc.edge;
      }
    }
    // The Dijkstra predecessor is always tight, so a successor exists.
    p.edges.push_back(best_e);
    p.vertices.push_back(best_u);
    v = best_u;
  }
  result.length = path_length(p, weights);
  result.path = std::move(p);
  return result;
}

std::vector<Path> all_shortest_paths(const Graph& g, Query q, std::span<const double> weights) {
  validate_query(g, q);
  const std::vector<double> dist = distances_to_goal(g, q.goal, weights);
  std::vector<Path> out;
  if (dist[idx(q.start)] == kInfinity) return out;

  std::vector<char> on_stack(g.num_vertices(), 0);
  Path cur;
  cur.vertices.push_back(q.start);
  on_stack[idx(q.start)] = 1;

  std::function<void(VertexId)> dfs = [&](VertexId v) {
    if (v == q.goal) {
      out.push_back(cur);
      return;
    }
    for (const Arc& arc : g.out_arcs(v)) {
      const double w = weights[static_cast<std::size_t>(arc.edge)];
      if (w == kInfinity || on_stack[idx(arc.vertex)]) continue;
      if (w + dist[idx(arc.vertex)] != dist[idx(v)]) continue;
      on_stack[idx(arc.vertex)] = 1;
      cur.vertices.push_back(arc.vertex);
      cur.edges.push_back(arc.edge);
      dfs(arc.vertex);
      cur.vertices.pop_back();
      cur.edges.pop_back();
      on_stack[idx(arc.vertex)] = 0;
    }
  };
  dfs(q.start);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lazysp
