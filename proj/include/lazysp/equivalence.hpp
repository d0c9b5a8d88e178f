#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lazysp/baselines.hpp"
#include "lazysp/problem.hpp"

namespace lazysp {

// A set of newly evaluated edges, sorted. Empty means "terminate".
using EdgeSet = std::vector<EdgeId>;
using OutcomeSet = std::set<EdgeSet>;

enum class EquivAlgorithm { LazySPExpand, LazySPForward, AStar, LWAStar };
enum class EquivPair { ExpandAStar, ForwardLWAStar };

std::optional<EquivPair> parse_equiv_pair(std::string_view name);
std::string_view equiv_pair_name(EquivPair p);

/// Next-evaluation choices of LazySP-Expand / LazySP-Forward given the
/// evaluated set in `state`: for every minimal-w_lazy candidate path, the
/// selector output minus E_eval, or termination if the path is fully
/// evaluated (or no finite path exists).
OutcomeSet allowable_next_lazysp(EquivAlgorithm alg, const Graph& g, Query q, const LazyWeightState& state);

/// Every sequence of minimal-key pops from `search` that evaluates no new
/// edge, followed by the first pop that does (or by termination). Each
/// outcome maps to one search state reached by such a sequence.
std::map<EdgeSet, AStarReopen> allowable_next(const AStarReopen& search);
std::map<EdgeSet, LazyWeightedAStar> allowable_next(const LazyWeightedAStar& search);

template <class Search>
OutcomeSet outcome_keys(const std::map<EdgeSet, Search>& m) {
  OutcomeSet s;
  for (const auto& [k, v] : m) s.insert(k);
  return s;
}

struct EquivFailure {
  std::string message;
  std::vector<EdgeId> evaluated;  // common evaluated set at the mismatch
  OutcomeSet lazysp;
  OutcomeSet baseline;
};

struct EquivWalkStats {
  std::size_t states = 0;
  std::size_t steps = 0;
};

/// Random walk from the initial state: at each common state compares the
/// two allowable outcome sets, picks one shared outcome uniformly and
/// advances both algorithms with it. Returns the first mismatch.
std::optional<EquivFailure> equivalence_walk(EquivPair pair, const ProblemInstance& inst, std::uint64_t seed,
                                             EquivWalkStats* stats = nullptr);

struct RandomGraphConfig {
  int min_vertices = 2;
  int max_vertices = 12;
  double edge_probability = 0.35;
  bool directed = true;
  double p_infinite = 0.2;
  int max_weight = 5;
  // Integer weights make exact length ties common; continuous ones make
  // them a measure-zero event.
  bool integer_weights = false;
};

/// Small random instance: true weights in [1, max_weight] (+inf with
/// p_infinite), admissible estimates in (0, w] (+inf edges get a finite one).
/// Integer mode draws both from 1..max_weight.
ProblemInstance random_small_instance(const RandomGraphConfig& cfg, std::uint64_t seed);

// Counterexample dump in the graph file format (with `# query`).
std::string serialize_instance(const ProblemInstance& inst);

}  // namespace lazysp
