#include "lazysp/equivalence.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_set>

#include "lazysp/random.hpp"

namespace lazysp {

namespace {

constexpr std::size_t kMaxSequenceStates = 2'000'000;

template <class Search>
void explore(const Search& s, std::map<EdgeSet, Search>& out, std::unordered_set<std::string>& seen) {
  if (!seen.insert(s.key()).second) return;
  if (seen.size() > kMaxSequenceStates) throw std::runtime_error("sequence enumeration exceeded its state budget");
  if (s.done()) {
    out.try_emplace(EdgeSet{}, s);
    return;
  }
  for (const auto& c : s.tied_choices()) {
    Search t = s;
    EdgeSet fresh = t.pop(c);
    if (fresh.empty()) {
      explore(t, out, seen);
      continue;
    }
    std::sort(fresh.begin(), fresh.end());
    out.try_emplace(std::move(fresh), std::move(t));
  }
}

EdgeSet sorted_evaluated(const LazyWeightState& s) {
  EdgeSet v = s.evaluated_edges();
  std::sort(v.begin(), v.end());
  return v;
}

std::string describe(const OutcomeSet& s) {
  std::ostringstream os;
  os << '{';
  bool first_set = true;
  for (const EdgeSet& es : s) {
    if (!first_set) os << ", ";
    first_set = false;
    os << '[';
    for (std::size_t i = 0; i < es.size(); ++i) os << (i ? " " : "") << es[i];
    os << ']';
  }
  os << '}';
  return os.str();
}

template <class Search>
std::optional<EquivFailure> walk(EquivAlgorithm lazy_alg, const ProblemInstance& inst, std::uint64_t seed,
                                 EquivWalkStats* stats) {
  const Graph& g = inst.graph;
  LazyWeightState lazy(inst.estimates);
  WeightOracle lazy_oracle(inst.true_weights);
  Search search(g, inst.query, inst.true_weights, inst.estimates, true);
  SplitMix64 rng(seed);

  for (;;) {
    const OutcomeSet a = allowable_next_lazysp(lazy_alg, g, inst.query, lazy);
    std::map<EdgeSet, Search> next = allowable_next(search);
    const OutcomeSet b = outcome_keys(next);
    if (stats) ++stats->states;
    if (a != b)
      return EquivFailure{"allowable sets differ: lazysp " + describe(a) + " vs baseline " + describe(b),
                          sorted_evaluated(lazy), a, b};

    auto it = a.begin();
    std::advance(it, static_cast<long>(rng() % a.size()));
    if (it->empty()) return std::nullopt;
    for (EdgeId e : *it) evaluate_edge(lazy, lazy_oracle, e);
    search = std::move(next.at(*it));
    if (stats) ++stats->steps;
    if (sorted_evaluated(lazy) != sorted_evaluated(search.state()))
      return EquivFailure{"evaluated sets diverged", sorted_evaluated(lazy), a, b};
  }
}

}  // namespace

std::optional<EquivPair> parse_equiv_pair(std::string_view name) {
  if (name == "expand-astar") return EquivPair::ExpandAStar;
  if (name == "forward-lwastar") return EquivPair::ForwardLWAStar;
  return std::nullopt;
}

std::string_view equiv_pair_name(EquivPair p) {
  return p == EquivPair::ExpandAStar ? "expand-astar" : "forward-lwastar";
}

OutcomeSet allowable_next_lazysp(EquivAlgorithm alg, const Graph& g, Query q, const LazyWeightState& state) {
  if (alg != EquivAlgorithm::LazySPExpand && alg != EquivAlgorithm::LazySPForward)
    throw std::invalid_argument("allowable_next_lazysp needs a LazySP variant");
  OutcomeSet out;
  const std::vector<Path> paths = all_shortest_paths(g, q, state.lazy_weights());
  if (paths.empty()) {
    out.insert(EdgeSet{});
    return out;
  }
  for (const Path& p : paths) {
    std::size_t pos = 0;
    while (pos < p.edges.size() && state.is_evaluated(p.edges[pos])) ++pos;
    if (pos == p.edges.size()) {
      out.insert(EdgeSet{});
      continue;
    }
    if (alg == EquivAlgorithm::LazySPForward) {
      out.insert(EdgeSet{p.edges[pos]});
      continue;
    }
    EdgeSet s;
    for (const Arc& arc : g.out_arcs(p.vertices[pos]))
      if (!state.is_evaluated(arc.edge)) s.push_back(arc.edge);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    out.insert(std::move(s));
  }
  return out;
}

std::map<EdgeSet, AStarReopen> allowable_next(const AStarReopen& search) {
  std::map<EdgeSet, AStarReopen> out;
  std::unordered_set<std::string> seen;
  explore(search, out, seen);
  return out;
}

std::map<EdgeSet, LazyWeightedAStar> allowable_next(const LazyWeightedAStar& search) {
  std::map<EdgeSet, LazyWeightedAStar> out;
  std::unordered_set<std::string> seen;
  explore(search, out, seen);
  return out;
}

std::optional<EquivFailure> equivalence_walk(EquivPair pair, const ProblemInstance& inst, std::uint64_t seed,
                                             EquivWalkStats* stats) {
  if (pair == EquivPair::ExpandAStar) return walk<AStarReopen>(EquivAlgorithm::LazySPExpand, inst, seed, stats);
  return walk<LazyWeightedAStar>(EquivAlgorithm::LazySPForward, inst, seed, stats);
}

ProblemInstance random_small_instance(const RandomGraphConfig& cfg, std::uint64_t seed) {
  if (cfg.min_vertices < 2 || cfg.max_vertices < cfg.min_vertices)
    throw std::invalid_argument("bad vertex range");
  SplitMix64 rng(seed);
  std::uniform_int_distribution<int> nv(cfg.min_vertices, cfg.max_vertices);
  std::uniform_int_distribution<int> wdist(1, cfg.max_weight);
  const int n = nv(rng);

  ProblemInstance inst;
  inst.graph = Graph(static_cast<std::size_t>(n), cfg.directed);
  for (int u = 0; u < n; ++u)
    for (int v = cfg.directed ? 0 : u + 1; v < n; ++v) {
      if (u == v || rng.uniform() >= cfg.edge_probability) continue;
      inst.graph.add_edge(u, v);
      const bool inf = rng.uniform() < cfg.p_infinite;
      if (cfg.integer_weights) {
        const int w = wdist(rng);
        inst.true_weights.push_back(inf ? kInfinity : w);
        inst.estimates.push_back(std::uniform_int_distribution<int>(1, w)(rng));
      } else {
        const double w = 1.0 + (cfg.max_weight - 1.0) * rng.uniform();
        inst.true_weights.push_back(inf ? kInfinity : w);
        inst.estimates.push_back(w * (0.05 + 0.95 * (1.0 - rng.uniform())));
      }
    }
  // Prefer a pair joined under the estimates; fall back to any distinct pair.
  std::uniform_int_distribution<int> vd(0, n - 1);
  for (int attempt = 0; attempt < 64; ++attempt) {
    inst.query.start = vd(rng);
    do inst.query.goal = vd(rng);
    while (inst.query.goal == inst.query.start);
    if (shortest_path(inst.graph, inst.query, inst.estimates).found()) break;
  }
  return inst;
}

std::string serialize_instance(const ProblemInstance& inst) {
  std::ostringstream os;
  write_graph(os, inst.graph, inst.estimates, inst.true_weights, inst.query);
  return os.str();
}

}  // namespace lazysp
