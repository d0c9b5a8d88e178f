#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "lazysp/graph.hpp"
#include "lazysp/selector.hpp"
#include "lazysp/weights.hpp"

namespace lazysp {

/// Independent per-edge belief: with `collision_probability` the edge is
/// +inf, otherwise its weight is uniform on [valid_lo, valid_hi] (a point
/// mass when the two are equal).
struct EdgeBelief {
  double collision_probability = 0.0;
  double valid_lo = 0.0;
  double valid_hi = 0.0;
};

struct EdgeBeliefModel {
  std::vector<EdgeBelief> edges;

  // Same belief for every edge.
  static EdgeBeliefModel uniform(std::size_t num_edges, double collision_probability, double lo, double hi);
  // Valid weight fixed per edge (e.g. Euclidean length), shared collision
  // probability.
  static EdgeBeliefModel fixed(std::span<const double> valid_weights, double collision_probability);
};

/// Monte Carlo edge-indicator probabilities p(e).
struct IndicatorEstimate {
  std::vector<double> probability;
  std::size_t samples = 0;
  std::size_t finite_samples = 0;
};

class OverconstrainedBelief : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Draws `n_samples` weight functions from `model` conditioned on the
/// evaluated edges of `state` (those are pinned to their known values),
/// solves each with shortest_path and tallies edge membership over the
/// samples that have a finite path. Sample i uses a generator seeded from
/// (seed, i) only, so the result is independent of the thread count.
/// Throws OverconstrainedBelief when no sample has a finite path.
IndicatorEstimate sample_indicator(const Graph& g, Query q, const LazyWeightState& state,
                                   const EdgeBeliefModel& model, std::size_t n_samples, std::uint64_t seed);

// Single-threaded reference for sample_indicator; identical output.
IndicatorEstimate sample_indicator_serial(const Graph& g, Query q, const LazyWeightState& state,
                                          const EdgeBeliefModel& model, std::size_t n_samples,
                                          std::uint64_t seed);

// One conditioned weight draw; exposed for the conditioning tests.
void sample_weights(const LazyWeightState& state, const EdgeBeliefModel& model, std::uint64_t sample_seed,
                    std::span<double> out);

/// Unevaluated candidate edge with the largest p(e); earliest on ties.
std::vector<EdgeId> select_weightsamp(const SelectorContext& ctx, const IndicatorEstimate& est);

/// Resamples on every iteration. If no sample has a finite path every p(e)
/// is taken as 0, which falls back to the earliest unevaluated edge.
class WeightSampSelector final : public Selector {
 public:
  WeightSampSelector(EdgeBeliefModel model, std::size_t n_samples, std::uint64_t seed);

  SelectorKind kind() const override { return SelectorKind::WeightSamp; }
  std::vector<EdgeId> select(const SelectorContext& ctx) override;

  std::size_t overconstrained_iterations() const { return overconstrained_; }

 private:
  EdgeBeliefModel model_;
  std::size_t n_samples_;
  std::uint64_t seed_;
  std::size_t overconstrained_ = 0;
};

}  // namespace lazysp
