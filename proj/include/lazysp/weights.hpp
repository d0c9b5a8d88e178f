#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lazysp/graph.hpp"

namespace lazysp {

/// Counting front-end over an immutable true-weight table.
///
/// The table itself is shared (it is never mutated); each run owns its own
/// oracle so the evaluation count and flags are per-run. Only the first
/// request for an edge counts as an evaluation.
class WeightOracle {
 public:
  explicit WeightOracle(std::span<const double> true_weights);

  double evaluate(EdgeId e);

  std::size_t evaluation_count() const { return count_; }
  bool evaluated(EdgeId e) const { return requested_[static_cast<std::size_t>(e)] != 0; }
  std::size_t num_edges() const { return weights_.size(); }

  // Uncounted access for invariant checks and optimality cross-checks.
  // Never call this from an algorithm under test.
  std::span<const double> peek_all() const { return weights_; }

 private:
  std::span<const double> weights_;
  std::vector<char> requested_;
  std::size_t count_ = 0;
};

/// Per-run view w_lazy over the estimates and the evaluated set E_eval.
class LazyWeightState {
 public:
  explicit LazyWeightState(std::span<const double> estimates);

  double lazy_weight(EdgeId e) const { return lazy_[static_cast<std::size_t>(e)]; }
  double estimate(EdgeId e) const { return estimates_[static_cast<std::size_t>(e)]; }
  bool is_evaluated(EdgeId e) const { return evaluated_[static_cast<std::size_t>(e)] != 0; }

  // Dense w_lazy vector, suitable as inner-search weights.
  std::span<const double> lazy_weights() const { return lazy_; }
  std::span<const double> estimates() const { return estimates_; }

  // Evaluated edge ids in evaluation order.
  const std::vector<EdgeId>& evaluated_edges() const { return order_; }
  std::size_t num_evaluated() const { return order_.size(); }
  std::size_t num_edges() const { return lazy_.size(); }

  // Records a true weight for an unevaluated edge. Throws if `e` was
  // already evaluated (E_eval only grows, values never change).
  void record(EdgeId e, double true_weight);

 private:
  std::span<const double> estimates_;
  std::vector<double> lazy_;
  std::vector<char> evaluated_;
  std::vector<EdgeId> order_;
};

/// Returns w(e), querying the oracle only if `e` is not yet in E_eval.
double evaluate_edge(LazyWeightState& state, WeightOracle& oracle, EdgeId e);

inline double lazy_weight(const LazyWeightState& state, EdgeId e) { return state.lazy_weight(e); }

}  // namespace lazysp
