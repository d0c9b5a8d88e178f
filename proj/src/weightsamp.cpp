#include "lazysp/weightsamp.hpp"

#include <omp.h>

#include <algorithm>

#include "lazysp/random.hpp"
#include "lazysp/shortest_path.hpp"

namespace lazysp {

EdgeBeliefModel EdgeBeliefModel::uniform(std::size_t num_edges, double collision_probability, double lo,
                                         double hi) {
  if (collision_probability < 0.0 || collision_probability > 1.0 || !(lo <= hi) || lo < 0.0)
    throw std::invalid_argument("invalid edge belief");
  EdgeBeliefModel m;
  m.edges.assign(num_edges, EdgeBelief{collision_probability, lo, hi});
  return m;
}

EdgeBeliefModel EdgeBeliefModel::fixed(std::span<const double> valid_weights, double collision_probability) {
  if (collision_probability < 0.0 || collision_probability > 1.0)
    throw std::invalid_argument("collision probability must be in [0, 1]");
  EdgeBeliefModel m;
  m.edges.reserve(valid_weights.size());
  for (double w : valid_weights) m.edges.push_back({collision_probability, w, w});
  return m;
}

void sample_weights(const LazyWeightState& state, const EdgeBeliefModel& model, std::uint64_t sample_seed,
                    std::span<double> out) {
  SplitMix64 rng(sample_seed);
  const std::size_t m = state.num_edges();
  for (std::size_t i = 0; i < m; ++i) {
    const auto e = static_cast<EdgeId>(i);
    if (state.is_evaluated(e)) {
      out[i] = state.lazy_weight(e);
      continue;
    }
    const EdgeBelief& b = model.edges[i];
    // Two draws per unevaluated edge regardless of outcome keeps the
    // stream layout fixed.
    const double u_collide = rng.uniform();
    const double u_weight = rng.uniform();
    if (u_collide < b.collision_probability)
      out[i] = kInfinity;
    else
      out[i] = b.valid_lo + (b.valid_hi - b.valid_lo) * u_weight;
  }
}

namespace {

void check_inputs(const Graph& g, Query q, const LazyWeightState& state, const EdgeBeliefModel& model,
                  std::size_t n_samples) {
  validate_query(g, q);
  if (n_samples == 0) throw std::invalid_argument("n_samples must be positive");
  if (model.edges.size() != g.num_edges() || state.num_edges() != g.num_edges())
    throw std::invalid_argument("belief model / state size does not match the graph");
}

// Returns true when sample `i` produced a finite path; bumps counts.
bool tally_sample(const Graph& g, Query q, const LazyWeightState& state, const EdgeBeliefModel& model,
                  std::uint64_t seed, std::size_t i, std::vector<double>& weights, SearchWorkspace& ws,
                  std::vector<std::uint32_t>& counts) {
  sample_weights(state, model, derive_seed(seed, i), weights);
  const SearchResult r = shortest_path(g, q, weights, ws);
  if (!r.found()) return false;
  for (EdgeId e : r.path->edges) ++counts[static_cast<std::size_t>(e)];
  return true;
}

IndicatorEstimate finish(std::vector<std::uint32_t> counts, std::size_t n_samples, std::size_t finite) {
  if (finite == 0)
    throw OverconstrainedBelief("no sampled weight function admits a finite path");
  IndicatorEstimate est;
  est.samples = n_samples;
  est.finite_samples = finite;
  est.probability.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    est.probability[i] = static_cast<double>(counts[i]) / static_cast<double>(finite);
  return est;
}

}  // namespace

IndicatorEstimate sample_indicator_serial(const Graph& g, Query q, const LazyWeightState& state,
                                          const EdgeBeliefModel& model, std::size_t n_samples,
                                          std::uint64_t seed) {
  check_inputs(g, q, state, model, n_samples);
  std::vector<std::uint32_t> counts(g.num_edges(), 0);
  std::vector<double> weights(g.num_edges());
  SearchWorkspace ws;
  std::size_t finite = 0;
  for (std::size_t i = 0; i < n_samples; ++i)
    if (tally_sample(g, q, state, model, seed, i, weights, ws, counts)) ++finite;
  return finish(std::move(counts), n_samples, finite);
}

IndicatorEstimate sample_indicator(const Graph& g, Query q, const LazyWeightState& state,
                                   const EdgeBeliefModel& model, std::size_t n_samples, std::uint64_t seed) {
  check_inputs(g, q, state, model, n_samples);
  std::vector<std::uint32_t> counts(g.num_edges(), 0);
  std::size_t finite = 0;
  const auto n = static_cast<long>(n_samples);

#pragma omp parallel if (n_samples >= 64)
  {
    std::vector<std::uint32_t> local(g.num_edges(), 0);
    std::vector<double> weights(g.num_edges());
    SearchWorkspace ws;
    std::size_t local_finite = 0;

#pragma omp for schedule(static) nowait
    for (long i = 0; i < n; ++i)
      if (tally_sample(g, q, state, model, seed, static_cast<std::size_t>(i), weights, ws, local))
        ++local_finite;

#pragma omp critical(lazysp_weightsamp_reduce)
    {
      for (std::size_t e = 0; e < local.size(); ++e) counts[e] += local[e];
      finite += local_finite;
    }
  }
  return finish(std::move(counts), n_samples, finite);
}

std::vector<EdgeId> select_weightsamp(const SelectorContext& ctx, const IndicatorEstimate& est) {
  const std::vector<std::size_t> open = unevaluated_positions(ctx);
  if (open.empty()) throw std::logic_error("selector invoked on a fully evaluated candidate");
  std::size_t best = open.front();
  double best_p = -1.0;
  for (std::size_t pos : open) {
    const double p = est.probability[static_cast<std::size_t>(ctx.candidate.edges[pos])];
    if (p > best_p) {
      best_p = p;
      best = pos;
    }
  }
  return {ctx.candidate.edges[best]};
}

WeightSampSelector::WeightSampSelector(EdgeBeliefModel model, std::size_t n_samples, std::uint64_t seed)
    : model_(std::move(model)), n_samples_(n_samples), seed_(seed) {
  if (n_samples_ == 0) throw std::invalid_argument("WeightSamp needs at least one sample");
}

std::vector<EdgeId> WeightSampSelector::select(const SelectorContext& ctx) {
  IndicatorEstimate est;
  try {
    est = sample_indicator(ctx.graph, ctx.query, ctx.state, model_, n_samples_,
                           derive_seed(seed_, static_cast<std::uint64_t>(ctx.iteration)));
  } catch (const OverconstrainedBelief&) {
    ++overconstrained_;
    est.probability.assign(ctx.graph.num_edges(), 0.0);
  }
  return select_weightsamp(ctx, est);
}

}  // namespace lazysp
