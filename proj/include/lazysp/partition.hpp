#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lazysp/graph.hpp"
#include "lazysp/selector.hpp"
#include "lazysp/weights.hpp"

namespace lazysp {

class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All-pairs partition function over every (not necessarily simple) path:
///   Z[x][y] = sum over paths x->y of exp(-beta * len(path)).
/// Starts as the identity (edgeless graph). Arcs are added and removed by
/// exact rank-1 updates; a +inf arc is the same as no arc.
class ZMatrix {
 public:
  ZMatrix() = default;
  ZMatrix(std::size_t num_vertices, double beta);

  std::size_t size() const { return n_; }
  double beta() const { return beta_; }
  bool divergent() const { return divergent_; }
  void mark_divergent() { divergent_ = true; }

  double operator()(VertexId x, VertexId y) const {
    return values_[static_cast<std::size_t>(x) * n_ + static_cast<std::size_t>(y)];
  }
  std::span<const double> values() const { return values_; }

  // Adds arc a->b with weight w. Throws DivergenceError (leaving Z
  // untouched) when exp(beta*w) <= Z[b][a].
  void insert_arc(VertexId a, VertexId b, double w);
  // Removes a previously inserted arc a->b of weight w.
  void remove_arc(VertexId a, VertexId b, double w);
  // Changes the weight of arc a->b; same guarantee as insert_arc.
  void reweight_arc(VertexId a, VertexId b, double old_w, double new_w);

  // Raw access for the cache loader.
  std::vector<double>& mutable_values() { return values_; }

 private:
  void require_valid() const;
  void update(VertexId a, VertexId b, double scale);

  std::size_t n_ = 0;
  double beta_ = 1.0;
  bool divergent_ = false;
  std::vector<double> values_;
};

/// Z for the whole graph under `weights`, built by inserting the arcs one at
/// a time. Divergence sets the flag rather than throwing.
ZMatrix z_init(const Graph& g, double beta, std::span<const double> weights);
inline ZMatrix z_init(const Graph& g, double beta, const LazyWeightState& state) {
  return z_init(g, beta, state.lazy_weights());
}

/// Reflects a weight change of edge `e` (both arcs when undirected).
void z_apply(ZMatrix& z, const Graph& g, EdgeId e, double old_weight, double new_weight);

/// p(e) = 1 - Z(P \ e) / Z(P) over start->goal paths. Evaluates the
/// removed-edge entry in closed form from a handful of Z entries; Z itself
/// is not modified.
double partition_edge_prob(const ZMatrix& z, const Graph& g, Query q, EdgeId e, const LazyWeightState& state);

/// Same quantity by copying Z and removing the edge with full updates.
double partition_edge_prob_by_update(const ZMatrix& z, const Graph& g, Query q, EdgeId e,
                                     const LazyWeightState& state);

/// Unevaluated candidate edge maximizing p(e); earliest on ties.
std::vector<EdgeId> select_partition(const SelectorContext& ctx, const ZMatrix& z);

/// Keeps Z in sync with w_lazy across a run. An optional precomputed Z for
/// the estimates (same graph and beta) replaces the initial build.
class PartitionSelector final : public Selector {
 public:
  explicit PartitionSelector(double beta, std::shared_ptr<const ZMatrix> initial = nullptr);

  SelectorKind kind() const override { return SelectorKind::Partition; }
  void begin_run(const Graph& g, Query q, const LazyWeightState& state) override;
  std::vector<EdgeId> select(const SelectorContext& ctx) override;
  void on_evaluated(EdgeId e, double old_lazy, double new_lazy) override;

  const ZMatrix& z() const { return z_; }

 private:
  double beta_;
  std::shared_ptr<const ZMatrix> initial_;
  const Graph* graph_ = nullptr;
  Query query_{};
  ZMatrix z_;
  double z_ref_ = 0.0;  // Z[s][g] at the last full rebuild
};

// Z-cache keyed by (graph + estimates hash, beta).
std::uint64_t graph_hash(const Graph& g, std::span<const double> estimates);
void save_zcache(const std::string& path, std::uint64_t key, const ZMatrix& z);
std::optional<ZMatrix> load_zcache(const std::string& path, std::uint64_t key, double beta);

}  // namespace lazysp
