#include "lazysp/partition.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "lazysp/kernels.hpp"

namespace lazysp {

namespace {

double arc_factor(double beta, double w) { return w == kInfinity ? 0.0 : std::exp(-beta * w); }

constexpr char kCacheMagic[8] = {'L', 'Z', 'S', 'P', 'Z', 'C', '1', '\n'};

}  // namespace

ZMatrix::ZMatrix(std::size_t num_vertices, double beta)
    : n_(num_vertices), beta_(beta), values_(num_vertices * num_vertices, 0.0) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  for (std::size_t i = 0; i < n_; ++i) values_[i * n_ + i] = 1.0;
}

void ZMatrix::require_valid() const {
  if (divergent_) throw DivergenceError("partition function diverged; use a larger beta");
}

void ZMatrix::update(VertexId a, VertexId b, double scale) {
  std::vector<double> col(n_), row(n_);
  const auto ia = static_cast<std::size_t>(a);
  const auto ib = static_cast<std::size_t>(b);
  for (std::size_t x = 0; x < n_; ++x) col[x] = values_[x * n_ + ia];
  std::copy_n(values_.begin() + static_cast<std::ptrdiff_t>(ib * n_), n_, row.begin());
  kernels::rank1_update(values_, n_, col, row, scale);
}

void ZMatrix::insert_arc(VertexId a, VertexId b, double w) {
  require_valid();
  const double q = arc_factor(beta_, w);
  if (q == 0.0) return;
  // Z' = Z + Z[:,a] Z[b,:] / (exp(beta w) - Z[b][a]), written with q = exp(-beta w).
  const double denom = 1.0 - q * (*this)(b, a);
  if (!(denom > 0.0))
    throw DivergenceError("partition function diverges on arc " + std::to_string(a) + "->" + std::to_string(b) +
                          "; use a larger beta");
  update(a, b, q / denom);
}

void ZMatrix::remove_arc(VertexId a, VertexId b, double w) {
  require_valid();
  const double q = arc_factor(beta_, w);
  if (q == 0.0) return;
  // Inverse of insert_arc: Z = Z' - Z'[:,a] Z'[b,:] / (exp(beta w) + Z'[b][a]).
  update(a, b, -q / (1.0 + q * (*this)(b, a)));
}

void ZMatrix::reweight_arc(VertexId a, VertexId b, double old_w, double new_w) {
  require_valid();
  if (old_w == new_w) return;
  const double q_old = arc_factor(beta_, old_w);
  const double q_new = arc_factor(beta_, new_w);
  // Decide divergence before touching Z: Z[b][a] once the old arc is gone.
  const double zba = (*this)(b, a);
  const double zba_removed = zba / (1.0 + q_old * zba);
  if (q_new > 0.0 && !(1.0 - q_new * zba_removed > 0.0))
    throw DivergenceError("partition function diverges on arc " + std::to_string(a) + "->" + std::to_string(b) +
                          "; use a larger beta");
  remove_arc(a, b, old_w);
  insert_arc(a, b, new_w);
}

ZMatrix z_init(const Graph& g, double beta, std::span<const double> weights) {
  ZMatrix z(g.num_vertices(), beta);
  try {
    for (std::size_t i = 0; i < g.num_edges(); ++i) {
      const Edge& e = g.edge(static_cast<EdgeId>(i));
      z.insert_arc(e.u, e.v, weights[i]);
      if (!g.directed()) z.insert_arc(e.v, e.u, weights[i]);
    }
  } catch (const DivergenceError&) {
    z.mark_divergent();
  }
  return z;
}

void z_apply(ZMatrix& z, const Graph& g, EdgeId e, double old_weight, double new_weight) {
  const Edge& ed = g.edge(e);
  if (g.directed()) {
    z.reweight_arc(ed.u, ed.v, old_weight, new_weight);
    return;
  }
  z.reweight_arc(ed.u, ed.v, old_weight, new_weight);
  try {
    z.reweight_arc(ed.v, ed.u, old_weight, new_weight);
  } catch (const DivergenceError&) {
    z.reweight_arc(ed.u, ed.v, new_weight, old_weight);
    throw;
  }
}

double partition_edge_prob(const ZMatrix& z, const Graph& g, Query q, EdgeId e, const LazyWeightState& state) {
  if (z.divergent()) throw DivergenceError("partition function diverged; use a larger beta");
  const double total = z(q.start, q.goal);
  if (!(total > 0.0)) throw std::runtime_error("goal unreachable in the path ensemble");
  const double f = arc_factor(z.beta(), state.lazy_weight(e));
  if (f == 0.0) return 0.0;

  const Edge& ed = g.edge(e);
  const VertexId a = ed.u;
  const VertexId b = ed.v;
  // Entry (x,y) of Z with arc a->b removed.
  auto without_ab = [&](VertexId x, VertexId y) {
    return z(x, y) - f * z(x, a) * z(b, y) / (1.0 + f * z(b, a));
  };
  double rest;
  if (g.directed()) {
    rest = without_ab(q.start, q.goal);
  } else {
    // Then remove b->a from that matrix.
    rest = without_ab(q.start, q.goal) -
           f * without_ab(q.start, b) * without_ab(a, q.goal) / (1.0 + f * without_ab(a, b));
  }
  return std::clamp(1.0 - rest / total, 0.0, 1.0);
}

double partition_edge_prob_by_update(const ZMatrix& z, const Graph& g, Query q, EdgeId e,
                                     const LazyWeightState& state) {
  if (z.divergent()) throw DivergenceError("partition function diverged; use a larger beta");
  const double total = z(q.start, q.goal);
  if (!(total > 0.0)) throw std::runtime_error("goal unreachable in the path ensemble");
  ZMatrix scratch = z;
  const double w = state.lazy_weight(e);
  const Edge& ed = g.edge(e);
  scratch.remove_arc(ed.u, ed.v, w);
  if (!g.directed()) scratch.remove_arc(ed.v, ed.u, w);
  return std::clamp(1.0 - scratch(q.start, q.goal) / total, 0.0, 1.0);
}

std::vector<EdgeId> select_partition(const SelectorContext& ctx, const ZMatrix& z) {
  const std::vector<std::size_t> open = unevaluated_positions(ctx);
  if (open.empty()) throw std::logic_error("selector invoked on a fully evaluated candidate");
  std::size_t best = open.front();
  double best_p = -1.0;
  for (std::size_t pos : open) {
    const double p = partition_edge_prob(z, ctx.graph, ctx.query, ctx.candidate.edges[pos], ctx.state);
    if (p > best_p) {
      best_p = p;
      best = pos;
    }
  }
  return {ctx.candidate.edges[best]};
}

PartitionSelector::PartitionSelector(double beta, std::shared_ptr<const ZMatrix> initial)
    : beta_(beta), initial_(std::move(initial)) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  if (initial_ && initial_->beta() != beta_) throw std::invalid_argument("precomputed Z has a different beta");
}

void PartitionSelector::begin_run(const Graph& g, Query q, const LazyWeightState& state) {
  graph_ = &g;
  query_ = q;
  if (initial_ && initial_->size() == g.num_vertices() && state.num_evaluated() == 0)
    z_ = *initial_;
  else
    z_ = z_init(g, beta_, state);
  if (z_.divergent())
    throw DivergenceError("partition function diverges for beta=" + std::to_string(beta_) +
                          "; use a larger beta");
  z_ref_ = z_(q.start, q.goal);
}

std::vector<EdgeId> PartitionSelector::select(const SelectorContext& ctx) {
  // Removing arcs subtracts from Z. Once Z[s][g] has shrunk by many orders
  // of magnitude it is mostly round-off from the earlier terms, so rebuild
  // from the current lazy weights (a sum of positive terms only).
  if (z_(query_.start, query_.goal) < 1e-6 * z_ref_) {
    z_ = z_init(*graph_, beta_, ctx.state);
    z_ref_ = z_(query_.start, query_.goal);
  }
  return select_partition(ctx, z_);
}

void PartitionSelector::on_evaluated(EdgeId e, double old_lazy, double new_lazy) {
  z_apply(z_, *graph_, e, old_lazy, new_lazy);
}

std::uint64_t graph_hash(const Graph& g, std::span<const double> estimates) {
  // FNV-1a over the structure and the estimate bit patterns.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  mix(g.num_vertices());
  mix(g.directed() ? 1 : 0);
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edge(static_cast<EdgeId>(i));
    mix(static_cast<std::uint64_t>(e.u));
    mix(static_cast<std::uint64_t>(e.v));
    mix(std::bit_cast<std::uint64_t>(estimates[i]));
  }
  return h;
}

void save_zcache(const std::string& path, std::uint64_t key, const ZMatrix& z) {
  if (z.divergent()) throw DivergenceError("refusing to cache a divergent Z");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write Z cache " + path);
  const double beta = z.beta();
  const std::uint64_t n = z.size();
  out.write(kCacheMagic, sizeof kCacheMagic);
  out.write(reinterpret_cast<const char*>(&key), sizeof key);
  out.write(reinterpret_cast<const char*>(&beta), sizeof beta);
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(z.values().data()),
            static_cast<std::streamsize>(z.values().size() * sizeof(double)));
  if (!out) throw std::runtime_error("failed writing Z cache " + path);
}

std::optional<ZMatrix> load_zcache(const std::string& path, std::uint64_t key, double beta) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[sizeof kCacheMagic];
  std::uint64_t file_key = 0, n = 0;
  double file_beta = 0.0;
  in.read(magic, sizeof magic);
  in.read(reinterpret_cast<char*>(&file_key), sizeof file_key);
  in.read(reinterpret_cast<char*>(&file_beta), sizeof file_beta);
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  if (!in || std::memcmp(magic, kCacheMagic, sizeof magic) != 0) return std::nullopt;
  if (file_key != key || file_beta != beta) return std::nullopt;
  ZMatrix z(static_cast<std::size_t>(n), beta);
  in.read(reinterpret_cast<char*>(z.mutable_values().data()),
          static_cast<std::streamsize>(n * n * sizeof(double)));
  if (!in) return std::nullopt;
  return z;
}

}  // namespace lazysp
