#pragma once
// Brute-force reference implementations used only by the tests. Kept
// deliberately naive and independent of the library's search code.

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "lazysp/graph.hpp"
#include "lazysp/problem.hpp"
#include "lazysp/random.hpp"
#include "lazysp/selector.hpp"

namespace oracle {

using namespace lazysp;

// Every simple start->goal path, each as (vertices, edges).
inline std::vector<Path> simple_paths(const Graph& g, Query q) {
  std::vector<Path> out;
  std::vector<char> seen(g.num_vertices(), 0);
  Path cur;
  cur.vertices.push_back(q.start);
  seen[static_cast<std::size_t>(q.start)] = 1;
  std::function<void(VertexId)> dfs = [&](VertexId v) {
    if (v == q.goal) {
      out.push_back(cur);
      return;
    }
    for (const Edge& e : g.edges()) {
      const EdgeId id = static_cast<EdgeId>(&e - g.edges().data());
      VertexId next = kNoVertex;
      if (e.u == v)
        next = e.v;
      else if (!g.directed() && e.v == v)
        next = e.u;
      if (next == kNoVertex || seen[static_cast<std::size_t>(next)]) continue;
      seen[static_cast<std::size_t>(next)] = 1;
      cur.vertices.push_back(next);
      cur.edges.push_back(id);
      dfs(next);
      cur.vertices.pop_back();
      cur.edges.pop_back();
      seen[static_cast<std::size_t>(next)] = 0;
    }
  };
  dfs(q.start);
  return out;
}

inline double sum(const Path& p, std::span<const double> w) {
  double s = 0.0;
  for (EdgeId e : p.edges) s += w[static_cast<std::size_t>(e)];
  return s;
}

// Minimal length over simple paths (+inf if none is finite).
inline double min_length(const Graph& g, Query q, std::span<const double> w) {
  double best = kInfinity;
  for (const Path& p : simple_paths(g, q)) best = std::min(best, sum(p, w));
  return best;
}

// All minimal simple paths, sorted.
inline std::vector<Path> min_paths(const Graph& g, Query q, std::span<const double> w) {
  const double best = min_length(g, q, w);
  std::vector<Path> out;
  if (best == kInfinity) return out;
  for (const Path& p : simple_paths(g, q))
    if (sum(p, w) == best) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

// Plain transcription of the LazySP loop with brute-force inner search
// (smallest (vertices, edges) among minimal paths) and the simple
// selectors written out directly. Returns the evaluation order and the
// returned path; assumes integer weights so sums are exact.
struct NaiveRun {
  std::vector<EdgeId> evaluated;
  std::optional<Path> path;
  int searches = 0;
};

inline NaiveRun naive_lazysp(const Graph& g, Query q, std::span<const double> truth,
                             std::span<const double> est, SelectorKind kind) {
  NaiveRun run;
  std::vector<double> lazy(est.begin(), est.end());
  std::vector<char> known(est.size(), 0);
  for (int iter = 1;; ++iter) {
    ++run.searches;
    const auto paths = min_paths(g, q, lazy);
    if (paths.empty()) return run;
    const Path& p = paths.front();
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < p.edges.size(); ++i)
      if (!known[static_cast<std::size_t>(p.edges[i])]) open.push_back(i);
    if (open.empty()) {
      run.path = p;
      return run;
    }
    std::vector<EdgeId> pick;
    switch (kind) {
      case SelectorKind::Forward: pick = {p.edges[open.front()]}; break;
      case SelectorKind::Reverse: pick = {p.edges[open.back()]}; break;
      case SelectorKind::Alternate: pick = {p.edges[iter % 2 ? open.front() : open.back()]}; break;
      case SelectorKind::Bisection: {
        long best_d = -1;
        std::size_t best = 0;
        for (std::size_t i : open) {
          long d = std::min<long>(static_cast<long>(i) + 1, static_cast<long>(p.edges.size() - i));
          for (std::size_t j = 0; j < p.edges.size(); ++j)
            if (known[static_cast<std::size_t>(p.edges[j])]) d = std::min(d, std::labs(static_cast<long>(j) - static_cast<long>(i)));
          if (d > best_d) {
            best_d = d;
            best = i;
          }
        }
        pick = {p.edges[best]};
        break;
      }
      case SelectorKind::Expand: {
        const VertexId v = p.vertices[open.front()];
        for (std::size_t e = 0; e < g.num_edges(); ++e) {
          const Edge& ed = g.edge(static_cast<EdgeId>(e));
          if (ed.u == v || (!g.directed() && ed.v == v)) pick.push_back(static_cast<EdgeId>(e));
        }
        break;
      }
      default: throw std::invalid_argument("naive_lazysp: simple selectors only");
    }
    for (EdgeId e : pick) {
      const auto i = static_cast<std::size_t>(e);
      if (known[i]) continue;
      known[i] = 1;
      lazy[i] = truth[i];
      run.evaluated.push_back(e);
    }
  }
}

// Random small graph with integer weights in 1..max_w, +inf w.p. p_inf,
// estimates in 1..w (or equal to w when `exact`).
inline ProblemInstance random_integer_instance(std::uint64_t seed, int max_n, bool directed, double p_edge,
                                               double p_inf, int max_w, bool exact = false) {
  SplitMix64 rng(seed);
  const int n = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_n - 1));
  ProblemInstance inst;
  inst.graph = Graph(static_cast<std::size_t>(n), directed);
  for (int u = 0; u < n; ++u)
    for (int v = directed ? 0 : u + 1; v < n; ++v) {
      if (u == v || rng.uniform() >= p_edge) continue;
      inst.graph.add_edge(u, v);
      const int w = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_w));
      const bool inf = rng.uniform() < p_inf;
      inst.true_weights.push_back(inf ? kInfinity : w);
      inst.estimates.push_back(exact ? (inf ? kInfinity : w) : 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(w)));
    }
  inst.query.start = 0;
  inst.query.goal = n - 1;
  return inst;
}

}  // namespace oracle
