#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "lazysp/graph.hpp"
#include "lazysp/selector.hpp"
#include "lazysp/shortest_path.hpp"
#include "lazysp/weights.hpp"

namespace lazysp {

struct EngineOptions {
  // Keep selecting on the same candidate while every new evaluation came
  // back no heavier than its lazy value (the candidate is then still
  // shortest, so the inner search would return it again).
  bool immediate_expansion = false;
  // Stop with no-finite-path as soon as the inner search reports +inf.
  // When off, the candidate with the fewest +inf edges is evaluated until
  // it is fully known before giving up.
  bool infinite_early_return = true;
  std::optional<std::size_t> max_iterations;
};

// Selector broke the "at least one unevaluated candidate edge" contract.
class SelectorContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IterationLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EvalOutcome {
  EdgeId edge;
  double weight;
};

struct IterationRecord {
  int iter = 0;
  Path candidate;
  double candidate_lazy_length = kInfinity;
  std::vector<EdgeId> selected;
  std::vector<EvalOutcome> outcomes;  // only edges new to E_eval
};

// One bar per distinct candidate path, first-seen order.
struct PathBar {
  std::vector<EdgeId> edges;
  std::size_t already_evaluated = 0;  // before its first candidacy
  std::size_t newly_valid = 0;        // evaluated finite while it was a candidate
  std::size_t newly_invalid = 0;      // evaluated +inf while it was a candidate
  std::size_t unevaluated = 0;
};

struct RunTrace {
  // Selection iterations, then one closing record for the returned path
  // (empty `selected`). No closing record when no finite path is found.
  std::vector<IterationRecord> records;
  std::optional<Path> final_path;
  std::size_t edges_evaluated = 0;
  std::size_t iterations = 0;
  std::size_t searches = 0;
  std::size_t distinct_candidates = 0;
  double search_ms = 0.0;
  double selector_ms = 0.0;
  std::vector<PathBar> path_bars;
};

struct RunResult {
  SearchResult result;
  RunTrace trace;
};

RunResult run_lazysp(const Graph& g, Query q, WeightOracle& oracle, std::span<const double> estimates,
                     Selector& selector, const EngineOptions& opts = {});

// One JSON object per record:
//   {"iter", "candidate_edge_ids", "candidate_lazy_length", "selected", "outcomes":[{"edge","weight"}]}
// +inf is written as the string "inf".
void write_trace_jsonl(std::ostream& out, const RunTrace& trace);

// len <= eps * optimal, with len = +inf only acceptable when optimal is.
bool verify_suboptimality(double returned_length, double epsilon, double optimal_length);
// Length of the returned path under the oracle's true weights.
bool verify_suboptimality(const SearchResult& result, const WeightOracle& oracle, double epsilon,
                          double optimal_length);

}  // namespace lazysp
