#include "lazysp/engine.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <ostream>
#include <string>

#include <json.hpp>

namespace lazysp {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

bool fully_evaluated(const Path& p, const LazyWeightState& state) {
  return std::all_of(p.edges.begin(), p.edges.end(), [&](EdgeId e) { return state.is_evaluated(e); });
}

// Path with the fewest +inf lazy edges; each +inf counts as one more than
// every finite weight combined.
SearchResult least_infinite_path(const Graph& g, Query q, const LazyWeightState& state, SearchWorkspace& ws) {
  double total = 1.0;
  for (double w : state.lazy_weights())
    if (w != kInfinity) total += w;
  std::vector<double> w(state.lazy_weights().begin(), state.lazy_weights().end());
  for (double& x : w)
    if (x == kInfinity) x = total;
  SearchResult r = shortest_path(g, q, w, ws);
  if (r.found()) r.length = path_length(*r.path, state.lazy_weights());
  return r;
}

void fill_path_bars(RunTrace& trace, const std::vector<int>& eval_iter) {
  struct Span {
    int first;
    int last;
  };
  std::vector<double> outcome(eval_iter.size(), 0.0);
  std::vector<const Path*> order;
  std::map<std::vector<EdgeId>, Span> spans;
  for (const IterationRecord& r : trace.records) {
    for (const EvalOutcome& o : r.outcomes) outcome[static_cast<std::size_t>(o.edge)] = o.weight;
    auto [it, fresh] = spans.try_emplace(r.candidate.edges, Span{r.iter, r.iter});
    if (fresh)
      order.push_back(&r.candidate);
    else
      it->second.last = r.iter;
  }
  trace.distinct_candidates = order.size();
  for (const Path* p : order) {
    const Span s = spans.at(p->edges);
    PathBar bar;
    bar.edges = p->edges;
    for (EdgeId e : p->edges) {
      const auto i = static_cast<std::size_t>(e);
      if (eval_iter[i] < 0 || eval_iter[i] > s.last)
        ++bar.unevaluated;
      else if (eval_iter[i] < s.first)
        ++bar.already_evaluated;
      else if (outcome[i] == kInfinity)
        ++bar.newly_invalid;
      else
        ++bar.newly_valid;
    }
    trace.path_bars.push_back(std::move(bar));
  }
}

}  // namespace

RunResult run_lazysp(const Graph& g, Query q, WeightOracle& oracle, std::span<const double> estimates,
                     Selector& selector, const EngineOptions& opts) {
  validate_query(g, q);
  if (estimates.size() != g.num_edges() || oracle.num_edges() != g.num_edges())
    throw std::invalid_argument("estimate / oracle size does not match the graph");

  RunResult out;
  RunTrace& trace = out.trace;
  LazyWeightState state(estimates);
  SearchWorkspace ws;
  std::vector<int> eval_iter(g.num_edges(), -1);
  const std::size_t oracle_before = oracle.evaluation_count();

  auto finish = [&](std::optional<Path> path) {
    trace.edges_evaluated = oracle.evaluation_count() - oracle_before;
    if (path) {
      out.result.length = path_length(*path, state.lazy_weights());
      trace.final_path = path;
      out.result.path = std::move(path);
    }
    fill_path_bars(trace, eval_iter);
    return std::move(out);
  };

  {
    const auto t0 = Clock::now();
    selector.begin_run(g, q, state);
    trace.selector_ms += ms_since(t0);
  }

  int iteration = 0;
  std::optional<Path> candidate;
  bool reuse = false;
  for (;;) {
    if (!reuse) {
      const auto t0 = Clock::now();
      SearchResult r = shortest_path(g, q, state.lazy_weights(), ws);
      if (!r.found() && !opts.infinite_early_return) r = least_infinite_path(g, q, state, ws);
      trace.search_ms += ms_since(t0);
      ++trace.searches;
      if (!r.found()) return finish(std::nullopt);
      candidate = std::move(r.path);
    }
    reuse = false;

    const double lazy_len = path_length(*candidate, state.lazy_weights());
    if (fully_evaluated(*candidate, state)) {
      if (lazy_len == kInfinity) return finish(std::nullopt);
      IterationRecord rec;
      rec.iter = iteration + 1;
      rec.candidate = *candidate;
      rec.candidate_lazy_length = lazy_len;
      trace.records.push_back(std::move(rec));
      return finish(std::move(candidate));
    }

    ++iteration;
    if (opts.max_iterations && static_cast<std::size_t>(iteration) > *opts.max_iterations)
      throw IterationLimitError("LazySP exceeded " + std::to_string(*opts.max_iterations) + " iterations");
    trace.iterations = static_cast<std::size_t>(iteration);

    IterationRecord rec;
    rec.iter = iteration;
    rec.candidate = *candidate;
    rec.candidate_lazy_length = lazy_len;
    {
      const SelectorContext ctx{g, q, *candidate, state, iteration};
      const auto t0 = Clock::now();
      rec.selected = selector.select(ctx);
      trace.selector_ms += ms_since(t0);
    }

    bool hits_candidate = false;
    for (EdgeId e : rec.selected) {
      if (!g.has_edge(e)) throw SelectorContractError("selector returned invalid edge id " + std::to_string(e));
      if (!state.is_evaluated(e) &&
          std::find(candidate->edges.begin(), candidate->edges.end(), e) != candidate->edges.end())
        hits_candidate = true;
    }
    if (!hits_candidate)
      throw SelectorContractError("selector returned no unevaluated edge of the candidate path");

    bool no_heavier = true;
    for (EdgeId e : rec.selected) {
      if (state.is_evaluated(e)) continue;
      const double old_lazy = state.lazy_weight(e);
      const double w = evaluate_edge(state, oracle, e);
      eval_iter[static_cast<std::size_t>(e)] = iteration;
      rec.outcomes.push_back({e, w});
      if (w > old_lazy) no_heavier = false;
      const auto t0 = Clock::now();
      selector.on_evaluated(e, old_lazy, w);
      trace.selector_ms += ms_since(t0);
    }
    trace.records.push_back(std::move(rec));

    // Only reuse when the candidate is still unfinished; a finished one gets
    // a confirming search.
    reuse = opts.immediate_expansion && no_heavier && !fully_evaluated(*candidate, state);
  }
}

void write_trace_jsonl(std::ostream& out, const RunTrace& trace) {
  using nlohmann::json;
  auto weight = [](double w) -> json {
    if (w == kInfinity) return "inf";
    return w;
  };
  for (const IterationRecord& r : trace.records) {
    json j;
    j["iter"] = r.iter;
    j["candidate_edge_ids"] = r.candidate.edges;
    j["candidate_lazy_length"] = weight(r.candidate_lazy_length);
    j["selected"] = r.selected;
    json outcomes = json::array();
    for (const EvalOutcome& o : r.outcomes) outcomes.push_back({{"edge", o.edge}, {"weight", weight(o.weight)}});
    j["outcomes"] = std::move(outcomes);
    out << j.dump() << '\n';
  }
}

bool verify_suboptimality(double returned_length, double epsilon, double optimal_length) {
  if (optimal_length == kInfinity) return returned_length == kInfinity;
  return returned_length <= epsilon * optimal_length;
}

bool verify_suboptimality(const SearchResult& result, const WeightOracle& oracle, double epsilon,
                          double optimal_length) {
  const double len = result.found() ? path_length(*result.path, oracle.peek_all()) : kInfinity;
  return verify_suboptimality(len, epsilon, optimal_length);
}

}  // namespace lazysp
