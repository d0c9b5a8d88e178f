#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lazysp/graph.hpp"
#include "lazysp/shortest_path.hpp"
#include "lazysp/weights.hpp"

namespace lazysp {

// Goal distances under w_lazy / w_est (reverse Dijkstra), +inf if unreachable.
std::vector<double> h_lazy(const Graph& g, VertexId goal, const LazyWeightState& state);
std::vector<double> h_est(const Graph& g, VertexId goal, std::span<const double> estimates);

class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Evaluated edge ids in first-request order.
using EdgeTrace = std::vector<EdgeId>;

/// A* without a CLOSED list (vertices are reopened when g improves), keyed
/// by f = g + h_lazy. The first expansion of a vertex evaluates all its
/// out-edges; h_lazy is recomputed after every evaluation. Popping the goal
/// terminates.
///
/// Driven one pop at a time so callers can pick among tied vertices.
/// Copyable: the state is plain vectors plus the weight views.
class AStarReopen {
 public:
  AStarReopen(const Graph& g, Query q, std::span<const double> true_weights, std::span<const double> estimates,
              bool check_invariants = false);

  bool done() const { return done_; }
  // OPEN vertices with minimal finite f, ascending. Empty once done.
  std::vector<VertexId> tied_choices() const;
  // Pops `v` (must be one of tied_choices). Returns the edges newly
  // evaluated by this pop.
  std::vector<EdgeId> pop(VertexId v);
  // Runs to completion breaking ties by smallest vertex id.
  void run();

  SearchResult result() const;
  const LazyWeightState& state() const { return state_; }
  const WeightOracle& oracle() const { return oracle_; }
  std::size_t evaluation_count() const { return oracle_.evaluation_count(); }

  // Everything that determines future behavior, as bytes.
  std::string key() const;
  void check_invariants() const;

 private:
  double f(VertexId v) const;
  void update_done();

  const Graph* g_;
  Query q_;
  WeightOracle oracle_;
  LazyWeightState state_;
  bool check_;
  std::vector<double> h_;
  std::vector<double> gval_;
  std::vector<EdgeId> parent_;
  std::vector<char> open_;
  std::vector<char> expanded_;
  bool done_ = false;
};

/// Lazy Weighted A* without CLOSED: vertex queue keyed g + h, edge queue
/// keyed g + w_hat + h(head), w_hat = w_lazy, h = h_lazy. The usefulness
/// test is applied when an edge is popped. Runs while the smaller top key
/// is below g[goal]; the vertex queue wins ties between the two queues.
class LazyWeightedAStar {
 public:
  // One queued arc: edge id plus the tail it is traversed from.
  struct QueuedArc {
    EdgeId edge;
    VertexId tail;
    friend bool operator==(const QueuedArc&, const QueuedArc&) = default;
  };
  // Exactly one of the two is meaningful, depending on `is_vertex`.
  struct Choice {
    bool is_vertex;
    VertexId vertex;
    QueuedArc arc;
  };

  LazyWeightedAStar(const Graph& g, Query q, std::span<const double> true_weights,
                    std::span<const double> estimates, bool check_invariants = false);

  bool done() const { return done_; }
  std::vector<Choice> tied_choices() const;
  std::vector<EdgeId> pop(const Choice& c);
  void run();

  SearchResult result() const;
  const LazyWeightState& state() const { return state_; }
  const WeightOracle& oracle() const { return oracle_; }
  std::size_t evaluation_count() const { return oracle_.evaluation_count(); }

  std::string key() const;
  void check_invariants() const;

 private:
  std::size_t arc_slot(const QueuedArc& a) const;
  QueuedArc slot_arc(std::size_t slot) const;
  double vertex_key(VertexId v) const;
  double arc_key(const QueuedArc& a) const;
  void update_done();

  const Graph* g_;
  Query q_;
  WeightOracle oracle_;
  LazyWeightState state_;
  bool check_;
  std::vector<double> h_;
  std::vector<double> gval_;
  std::vector<EdgeId> parent_;
  std::vector<char> qv_;
  std::vector<char> qe_;  // slot 2*e for traversal from edge(e).u, 2*e+1 from edge(e).v
  bool done_ = false;
};

struct BaselineResult {
  SearchResult result;
  EdgeTrace trace;
};

BaselineResult run_astar_reopen(const Graph& g, Query q, std::span<const double> true_weights,
                                std::span<const double> estimates, bool check_invariants = false);
BaselineResult run_lwastar(const Graph& g, Query q, std::span<const double> true_weights,
                           std::span<const double> estimates, bool check_invariants = false);

}  // namespace lazysp
