#include "lazysp/baselines.hpp"

#include <algorithm>
#include <cstring>

namespace lazysp {

namespace {

std::size_t idx(VertexId v) { return static_cast<std::size_t>(v); }

void append_bytes(std::string& s, const void* p, std::size_t n) { s.append(static_cast<const char*>(p), n); }

template <class T>
void append_vec(std::string& s, const std::vector<T>& v) {
  append_bytes(s, v.data(), v.size() * sizeof(T));
}

// Predecessor-edge walk back from the goal.
SearchResult trace_back(const Graph& g, Query q, const std::vector<EdgeId>& parent,
                        std::span<const double> weights) {
  SearchResult r;
  Path p;
  VertexId v = q.goal;
  p.vertices.push_back(v);
  while (v != q.start) {
    const EdgeId e = parent[idx(v)];
    if (e < 0 || p.edges.size() > g.num_vertices()) throw std::logic_error("broken parent chain");
    const Edge& ed = g.edge(e);
    v = ed.u == v ? ed.v : ed.u;
    p.edges.push_back(e);
    p.vertices.push_back(v);
  }
  std::reverse(p.vertices.begin(), p.vertices.end());
  std::reverse(p.edges.begin(), p.edges.end());
  r.length = path_length(p, weights);
  r.path = std::move(p);
  return r;
}

}  // namespace

std::vector<double> h_lazy(const Graph& g, VertexId goal, const LazyWeightState& state) {
  return distances_to_goal(g, goal, state.lazy_weights());
}

std::vector<double> h_est(const Graph& g, VertexId goal, std::span<const double> estimates) {
  return distances_to_goal(g, goal, estimates);
}

// ---------------------------------------------------------------- A*

AStarReopen::AStarReopen(const Graph& g, Query q, std::span<const double> true_weights,
                         std::span<const double> estimates, bool check_invariants)
    : g_(&g),
      q_(q),
      oracle_(true_weights),
      state_(estimates),
      check_(check_invariants),
      gval_(g.num_vertices(), kInfinity),
      parent_(g.num_vertices(), -1),
      open_(g.num_vertices(), 0),
      expanded_(g.num_vertices(), 0) {
  validate_query(g, q);
  if (true_weights.size() != g.num_edges() || estimates.size() != g.num_edges())
    throw std::invalid_argument("weight table size does not match the graph");
  h_ = h_lazy(g, q.goal, state_);
  gval_[idx(q.start)] = 0.0;
  open_[idx(q.start)] = 1;
  update_done();
}

double AStarReopen::f(VertexId v) const { return gval_[idx(v)] + h_[idx(v)]; }

void AStarReopen::update_done() {
  if (done_) return;
  for (std::size_t v = 0; v < open_.size(); ++v)
    if (open_[v] && f(static_cast<VertexId>(v)) < kInfinity) return;
  done_ = true;
}

std::vector<VertexId> AStarReopen::tied_choices() const {
  std::vector<VertexId> out;
  if (done_) return out;
  double best = kInfinity;
  for (std::size_t v = 0; v < open_.size(); ++v) {
    if (!open_[v]) continue;
    const double fv = f(static_cast<VertexId>(v));
    if (fv < best) {
      best = fv;
      out.clear();
    }
    if (fv == best && fv < kInfinity) out.push_back(static_cast<VertexId>(v));
  }
  return out;
}

std::vector<EdgeId> AStarReopen::pop(VertexId v) {
  if (done_ || !open_[idx(v)]) throw std::logic_error("A* pop of a vertex not on OPEN");
  open_[idx(v)] = 0;
  std::vector<EdgeId> fresh;
  if (v == q_.goal) {
    done_ = true;
    return fresh;
  }
  if (!expanded_[idx(v)]) {
    expanded_[idx(v)] = 1;
    for (const Arc& arc : g_->out_arcs(v)) {
      if (state_.is_evaluated(arc.edge)) continue;
      evaluate_edge(state_, oracle_, arc.edge);
      fresh.push_back(arc.edge);
    }
    if (!fresh.empty()) h_ = h_lazy(*g_, q_.goal, state_);
  }
  const double gv = gval_[idx(v)];
  for (const Arc& arc : g_->out_arcs(v)) {
    const double w = state_.lazy_weight(arc.edge);
    if (w == kInfinity) continue;
    const std::size_t u = idx(arc.vertex);
    if (gv + w < gval_[u]) {
      gval_[u] = gv + w;
      parent_[u] = arc.edge;
      open_[u] = 1;
    }
  }
  if (check_) check_invariants();
  update_done();
  return fresh;
}

void AStarReopen::run() {
  while (!done_) pop(tied_choices().front());
}

SearchResult AStarReopen::result() const {
  // Only a popped goal counts; done without it means OPEN ran dry.
  if (!done_ || gval_[idx(q_.goal)] == kInfinity || open_[idx(q_.goal)]) return {};
  if (f(q_.goal) == kInfinity) return {};
  return trace_back(*g_, q_, parent_, oracle_.peek_all());
}

std::string AStarReopen::key() const {
  std::string s;
  append_vec(s, gval_);
  append_vec(s, open_);
  append_vec(s, expanded_);
  s.push_back(done_ ? 1 : 0);
  const std::size_t ne = state_.num_evaluated();
  append_bytes(s, &ne, sizeof ne);
  return s;
}

void AStarReopen::check_invariants() const {
  if (done_) return;
  const auto truth = oracle_.peek_all();
  for (std::size_t v = 0; v < gval_.size(); ++v) {
    if (gval_[v] == kInfinity) continue;
    for (const Arc& arc : g_->out_arcs(static_cast<VertexId>(v))) {
      const double w = truth[static_cast<std::size_t>(arc.edge)];
      if (w == kInfinity) continue;
      const double gu = gval_[idx(arc.vertex)];
      if (gu == kInfinity && !open_[v])
        throw InvariantViolation("A*: vertex " + std::to_string(v) + " has undiscovered successor " +
                                 std::to_string(arc.vertex) + " but is not on OPEN");
      if (gval_[v] + w < gu && !open_[v])
        throw InvariantViolation("A*: g[" + std::to_string(v) + "] + w < g[" + std::to_string(arc.vertex) +
                                 "] but " + std::to_string(v) + " is not on OPEN");
    }
  }
}

// ---------------------------------------------------------------- LWA*

LazyWeightedAStar::LazyWeightedAStar(const Graph& g, Query q, std::span<const double> true_weights,
                                     std::span<const double> estimates, bool check_invariants)
    : g_(&g),
      q_(q),
      oracle_(true_weights),
      state_(estimates),
      check_(check_invariants),
      gval_(g.num_vertices(), kInfinity),
      parent_(g.num_vertices(), -1),
      qv_(g.num_vertices(), 0),
      qe_(2 * g.num_edges(), 0) {
  validate_query(g, q);
  if (true_weights.size() != g.num_edges() || estimates.size() != g.num_edges())
    throw std::invalid_argument("weight table size does not match the graph");
  h_ = h_lazy(g, q.goal, state_);
  gval_[idx(q.start)] = 0.0;
  qv_[idx(q.start)] = 1;
  update_done();
}

std::size_t LazyWeightedAStar::arc_slot(const QueuedArc& a) const {
  return 2 * static_cast<std::size_t>(a.edge) + (g_->edge(a.edge).u == a.tail ? 0 : 1);
}

LazyWeightedAStar::QueuedArc LazyWeightedAStar::slot_arc(std::size_t slot) const {
  const auto e = static_cast<EdgeId>(slot / 2);
  const Edge& ed = g_->edge(e);
  return {e, slot % 2 == 0 ? ed.u : ed.v};
}

double LazyWeightedAStar::vertex_key(VertexId v) const { return gval_[idx(v)] + h_[idx(v)]; }

double LazyWeightedAStar::arc_key(const QueuedArc& a) const {
  const VertexId head = g_->edge(a.edge).u == a.tail ? g_->edge(a.edge).v : g_->edge(a.edge).u;
  return gval_[idx(a.tail)] + state_.lazy_weight(a.edge) + h_[idx(head)];
}

void LazyWeightedAStar::update_done() {
  if (done_) return;
  double top = kInfinity;
  for (std::size_t v = 0; v < qv_.size(); ++v)
    if (qv_[v]) top = std::min(top, vertex_key(static_cast<VertexId>(v)));
  for (std::size_t s = 0; s < qe_.size(); ++s)
    if (qe_[s]) top = std::min(top, arc_key(slot_arc(s)));
  if (!(top < gval_[idx(q_.goal)])) done_ = true;
}

std::vector<LazyWeightedAStar::Choice> LazyWeightedAStar::tied_choices() const {
  std::vector<Choice> out;
  if (done_) return out;
  double kv = kInfinity, ke = kInfinity;
  for (std::size_t v = 0; v < qv_.size(); ++v)
    if (qv_[v]) kv = std::min(kv, vertex_key(static_cast<VertexId>(v)));
  for (std::size_t s = 0; s < qe_.size(); ++s)
    if (qe_[s]) ke = std::min(ke, arc_key(slot_arc(s)));
  if (kv <= ke) {
    for (std::size_t v = 0; v < qv_.size(); ++v)
      if (qv_[v] && vertex_key(static_cast<VertexId>(v)) == kv)
        out.push_back({true, static_cast<VertexId>(v), {-1, kNoVertex}});
  } else {
    for (std::size_t s = 0; s < qe_.size(); ++s)
      if (qe_[s] && arc_key(slot_arc(s)) == ke) out.push_back({false, kNoVertex, slot_arc(s)});
  }
  return out;
}

std::vector<EdgeId> LazyWeightedAStar::pop(const Choice& c) {
  if (done_) throw std::logic_error("LWA* pop after termination");
  std::vector<EdgeId> fresh;
  if (c.is_vertex) {
    if (!qv_[idx(c.vertex)]) throw std::logic_error("LWA* pop of a vertex not on Q_v");
    qv_[idx(c.vertex)] = 0;
    for (const Arc& arc : g_->out_arcs(c.vertex)) qe_[arc_slot({arc.edge, c.vertex})] = 1;
  } else {
    const std::size_t slot = arc_slot(c.arc);
    if (!qe_[slot]) throw std::logic_error("LWA* pop of an arc not on Q_e");
    qe_[slot] = 0;
    const VertexId v = c.arc.tail;
    const VertexId head = g_->other(c.arc.edge, v);
    const double gv = gval_[idx(v)];
    // Usefulness test.
    if (!(gval_[idx(head)] <= gv + state_.lazy_weight(c.arc.edge))) {
      const bool is_new = !state_.is_evaluated(c.arc.edge);
      const double w = evaluate_edge(state_, oracle_, c.arc.edge);
      if (is_new) {
        fresh.push_back(c.arc.edge);
        h_ = h_lazy(*g_, q_.goal, state_);
      }
      if (gv + w < gval_[idx(head)]) {
        gval_[idx(head)] = gv + w;
        parent_[idx(head)] = c.arc.edge;
        qv_[idx(head)] = 1;
      }
    }
  }
  if (check_) check_invariants();
  update_done();
  return fresh;
}

void LazyWeightedAStar::run() {
  while (!done_) pop(tied_choices().front());
}

SearchResult LazyWeightedAStar::result() const {
  if (gval_[idx(q_.goal)] == kInfinity) return {};
  return trace_back(*g_, q_, parent_, oracle_.peek_all());
}

std::string LazyWeightedAStar::key() const {
  std::string s;
  append_vec(s, gval_);
  append_vec(s, qv_);
  append_vec(s, qe_);
  s.push_back(done_ ? 1 : 0);
  const std::size_t ne = state_.num_evaluated();
  append_bytes(s, &ne, sizeof ne);
  return s;
}

void LazyWeightedAStar::check_invariants() const {
  const auto truth = oracle_.peek_all();
  for (std::size_t v = 0; v < gval_.size(); ++v) {
    if (gval_[v] == kInfinity) continue;
    const auto tail = static_cast<VertexId>(v);
    for (const Arc& arc : g_->out_arcs(tail)) {
      const double w = std::max(truth[static_cast<std::size_t>(arc.edge)], state_.lazy_weight(arc.edge));
      if (gval_[v] + w < gval_[idx(arc.vertex)] && !qv_[v] && !qe_[arc_slot({arc.edge, tail})])
        throw InvariantViolation("LWA*: g[" + std::to_string(v) + "] + max(w, w_hat) < g[" +
                                 std::to_string(arc.vertex) + "] with neither vertex nor edge queued");
    }
  }
}

// ---------------------------------------------------------------- drivers

BaselineResult run_astar_reopen(const Graph& g, Query q, std::span<const double> true_weights,
                                std::span<const double> estimates, bool check_invariants) {
  AStarReopen a(g, q, true_weights, estimates, check_invariants);
  a.run();
  return {a.result(), a.state().evaluated_edges()};
}

BaselineResult run_lwastar(const Graph& g, Query q, std::span<const double> true_weights,
                           std::span<const double> estimates, bool check_invariants) {
  LazyWeightedAStar a(g, q, true_weights, estimates, check_invariants);
  a.run();
  return {a.result(), a.state().evaluated_edges()};
}

}  // namespace lazysp
