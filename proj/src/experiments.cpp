#include "lazysp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "lazysp/random.hpp"
#include "lazysp/selectors.hpp"
#include "lazysp/shortest_path.hpp"

namespace lazysp {

double halton(std::uint64_t index, unsigned base) {
  if (index < 1 || base < 2) throw std::invalid_argument("halton needs index >= 1 and base >= 2");
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= base;
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

namespace {

bool connected(const Graph& g, Query q, std::span<const double> w) {
  SearchWorkspace ws;
  search_to_goal(g, q.goal, w, ws, q.start);
  return ws.dist[static_cast<std::size_t>(q.start)] < kInfinity;
}

Query draw_query(const Graph& g, std::span<const double> w, SplitMix64& rng) {
  const auto n = g.num_vertices();
  if (n < 2) throw std::invalid_argument("need at least two vertices for a query");
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Query q;
    q.start = static_cast<VertexId>(rng() % n);
    q.goal = static_cast<VertexId>(rng() % n);
    if (q.start != q.goal && connected(g, q, w)) return q;
  }
  throw std::runtime_error("could not draw a connected start/goal pair");
}

double dist2d(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

}  // namespace

ProblemInstance gen_partconn(const PartConnConfig& cfg, std::uint64_t seed) {
  SplitMix64 rng(seed);
  ProblemInstance inst;
  inst.graph = Graph(static_cast<std::size_t>(cfg.n_vertices), false);
  for (int u = 0; u < cfg.n_vertices; ++u)
    for (int v = u + 1; v < cfg.n_vertices; ++v) {
      if (rng.uniform() >= cfg.edge_probability) continue;
      inst.graph.add_edge(u, v);
      const double u_inf = rng.uniform();
      const double u_w = rng.uniform();
      inst.true_weights.push_back(u_inf < cfg.p_infinite ? kInfinity
                                                          : cfg.weight_lo + (cfg.weight_hi - cfg.weight_lo) * u_w);
      inst.estimates.push_back(cfg.estimate);
    }
  inst.query = draw_query(inst.graph, inst.estimates, rng);
  return inst;
}

bool segment_intersects_box(std::array<double, 2> a, std::array<double, 2> b, const Box& box) {
  const double lo[2] = {box.x0, box.y0};
  const double hi[2] = {box.x1, box.y1};
  double t0 = 0.0, t1 = 1.0;
  for (int k = 0; k < 2; ++k) {
    const double d = b[k] - a[k];
    if (d == 0.0) {
      if (a[k] < lo[k] || a[k] > hi[k]) return false;
      continue;
    }
    double ta = (lo[k] - a[k]) / d;
    double tb = (hi[k] - a[k]) / d;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  return true;
}

Roadmap unitsquare_roadmap(const UnitSquareConfig& cfg) {
  Roadmap rm;
  rm.graph = Graph(static_cast<std::size_t>(cfg.n_points), false);
  for (int i = 1; i <= cfg.n_points; ++i)
    rm.coords.push_back({halton(static_cast<std::uint64_t>(i), 2), halton(static_cast<std::uint64_t>(i), 3)});
  for (int u = 0; u < cfg.n_points; ++u)
    for (int v = u + 1; v < cfg.n_points; ++v) {
      const double d = dist2d(rm.coords[static_cast<std::size_t>(u)], rm.coords[static_cast<std::size_t>(v)]);
      if (d > cfg.radius) continue;
      rm.graph.add_edge(u, v);
      rm.lengths.push_back(d);
    }
  return rm;
}

Query gen_unitsquare_query(const Roadmap& rm, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return draw_query(rm.graph, rm.lengths, rng);
}

std::vector<Box> gen_obstacles(const UnitSquareConfig& cfg, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Box> boxes;
  for (int i = 0; i < cfg.boxes_per_field; ++i) {
    const double x = rng.uniform();
    const double y = rng.uniform();
    const double w = cfg.box_lo + (cfg.box_hi - cfg.box_lo) * rng.uniform();
    const double h = cfg.box_lo + (cfg.box_hi - cfg.box_lo) * rng.uniform();
    boxes.push_back({x, y, x + w, y + h});
  }
  return boxes;
}

ProblemInstance gen_unitsquare(const Roadmap& rm, Query q, const std::vector<Box>& obstacles) {
  ProblemInstance inst;
  inst.graph = rm.graph;
  inst.query = q;
  inst.coords = rm.coords;
  inst.estimates = rm.lengths;
  inst.true_weights.reserve(rm.lengths.size());
  for (std::size_t i = 0; i < rm.lengths.size(); ++i) {
    const Edge& e = rm.graph.edge(static_cast<EdgeId>(i));
    const auto& a = rm.coords[static_cast<std::size_t>(e.u)];
    const auto& b = rm.coords[static_cast<std::size_t>(e.v)];
    const bool hit = std::any_of(obstacles.begin(), obstacles.end(),
                                 [&](const Box& box) { return segment_intersects_box(a, b, box); });
    inst.true_weights.push_back(hit ? kInfinity : rm.lengths[i]);
  }
  return inst;
}

std::optional<ProblemClass> parse_problem_class(std::string_view name) {
  if (name == "partconn") return ProblemClass::PartConn;
  if (name == "unitsquare") return ProblemClass::UnitSquare;
  return std::nullopt;
}

std::string_view problem_class_name(ProblemClass c) {
  return c == ProblemClass::PartConn ? "partconn" : "unitsquare";
}

double default_beta(ProblemClass c) { return c == ProblemClass::PartConn ? 2.0 : 21.0; }

std::optional<EdgeModel> parse_edge_model(std::string_view name) {
  if (name == "edges") return EdgeModel::Edges;
  if (name == "arcs") return EdgeModel::Arcs;
  return std::nullopt;
}

std::string_view edge_model_name(EdgeModel m) { return m == EdgeModel::Arcs ? "arcs" : "edges"; }

EdgeModel default_edge_model(ProblemClass c) {
  return c == ProblemClass::PartConn ? EdgeModel::Arcs : EdgeModel::Edges;
}

ProblemInstance split_into_arcs(const ProblemInstance& inst) {
  if (inst.graph.directed()) return inst;
  ProblemInstance out;
  out.graph = Graph(inst.graph.num_vertices(), true);
  out.query = inst.query;
  out.coords = inst.coords;
  for (std::size_t e = 0; e < inst.graph.num_edges(); ++e) {
    const Edge& ed = inst.graph.edge(static_cast<EdgeId>(e));
    out.graph.add_edge(ed.u, ed.v);
    out.graph.add_edge(ed.v, ed.u);
    for (int k = 0; k < 2; ++k) {
      out.true_weights.push_back(inst.true_weights[e]);
      out.estimates.push_back(inst.estimates[e]);
    }
  }
  return out;
}

ProblemInstance bench_instance(const BenchConfig& cfg, std::size_t id, const Roadmap* roadmap) {
  const auto k = static_cast<std::uint64_t>(id);
  if (cfg.cls == ProblemClass::PartConn) return gen_partconn(cfg.partconn, derive_seed(cfg.seed, 0, k));

  const auto nf = static_cast<std::uint64_t>(cfg.unitsquare.n_fields);
  if (k >= static_cast<std::uint64_t>(cfg.unitsquare.n_queries) * nf)
    throw std::invalid_argument("unitsquare instance id out of range");
  std::optional<Roadmap> own;
  if (!roadmap) roadmap = &own.emplace(unitsquare_roadmap(cfg.unitsquare));
  // Query i crossed with obstacle field j: id = i * n_fields + j.
  const Query q = gen_unitsquare_query(*roadmap, derive_seed(cfg.seed, 1, k / nf));
  return gen_unitsquare(*roadmap, q, gen_obstacles(cfg.unitsquare, derive_seed(cfg.seed, 2, k % nf)));
}

bool lengths_match(double returned, double optimal) {
  if (optimal == kInfinity || returned == kInfinity) return returned == optimal;
  return std::abs(returned - optimal) <= 1e-9 * std::max(1.0, std::abs(optimal));
}

std::vector<BenchRecord> run_bench(const BenchConfig& cfg) {
  const bool unit = cfg.cls == ProblemClass::UnitSquare;
  const std::size_t n_instances =
      cfg.instances.value_or(unit ? static_cast<std::size_t>(cfg.unitsquare.n_queries * cfg.unitsquare.n_fields)
                                  : 1000);
  const double beta = cfg.beta.value_or(default_beta(cfg.cls));
  const bool arcs = cfg.edge_model.value_or(default_edge_model(cfg.cls)) == EdgeModel::Arcs;
  const bool wants_partition =
      std::find(cfg.selectors.begin(), cfg.selectors.end(), SelectorKind::Partition) != cfg.selectors.end();

  std::optional<Roadmap> roadmap;
  std::shared_ptr<const ZMatrix> shared_z;
  if (unit) {
    roadmap = unitsquare_roadmap(cfg.unitsquare);
    if (wants_partition) {
      // Estimates are shared by every instance, so one Z serves them all.
      const std::uint64_t key = graph_hash(roadmap->graph, roadmap->lengths);
      std::optional<ZMatrix> z;
      if (!cfg.zcache.empty()) z = load_zcache(cfg.zcache, key, beta);
      if (!z) {
        z = z_init(roadmap->graph, beta, roadmap->lengths);
        if (z->divergent())
          throw DivergenceError("partition function diverges on the roadmap for beta=" + std::to_string(beta) +
                                "; use a larger beta");
        if (!cfg.zcache.empty()) save_zcache(cfg.zcache, key, *z);
      }
      shared_z = std::make_shared<const ZMatrix>(std::move(*z));
    }
  }

  std::vector<std::vector<BenchRecord>> per_instance(n_instances);
  std::exception_ptr failure;
  const auto n = static_cast<long>(n_instances);

#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, cfg.jobs))
  for (long k = 0; k < n; ++k) {
    try {
      const auto id = static_cast<std::uint64_t>(k);
      ProblemInstance inst = bench_instance(cfg, static_cast<std::size_t>(k), roadmap ? &*roadmap : nullptr);
      if (arcs) inst = split_into_arcs(inst);
      const double optimal = shortest_path(inst.graph, inst.query, inst.true_weights).length;

      SelectorOptions so;
      so.beta = beta;
      so.ws_samples = cfg.ws_samples;
      so.seed = derive_seed(cfg.seed, 3, id);
      so.belief = unit ? EdgeBeliefModel::fixed(inst.estimates, cfg.ws_collision_prob.value_or(0.1))
                       : EdgeBeliefModel::uniform(inst.graph.num_edges(), cfg.partconn.p_infinite,
                                                  cfg.partconn.weight_lo, cfg.partconn.weight_hi);
      so.z_initial = shared_z;

      for (SelectorKind kind : cfg.selectors) {
        auto selector = make_selector(kind, so);
        WeightOracle oracle(inst.true_weights);
        const RunResult run = run_lazysp(inst.graph, inst.query, oracle, inst.estimates, *selector, cfg.engine);
        BenchRecord rec{cfg.cls,
                        static_cast<int>(k),
                        kind,
                        oracle.evaluation_count(),
                        run.result.length,
                        lengths_match(run.result.length, optimal),
                        cfg.timing ? run.trace.search_ms : 0.0,
                        cfg.timing ? run.trace.selector_ms : 0.0};
        per_instance[static_cast<std::size_t>(k)].push_back(rec);
      }
    } catch (...) {
#pragma omp critical(lazysp_bench_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<BenchRecord> out;
  out.reserve(n_instances * cfg.selectors.size());
  for (auto& v : per_instance) out.insert(out.end(), v.begin(), v.end());
  return out;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << "class,instance,selector,edges_evaluated,length,optimal,search_ms,selector_ms\n";
  for (const BenchRecord& r : records)
    out << problem_class_name(r.cls) << ',' << r.instance << ',' << selector_name(r.selector) << ','
        << r.edges_evaluated << ',' << format_weight(r.length) << ',' << (r.optimal ? 1 : 0) << ','
        << format_weight(r.search_ms) << ',' << format_weight(r.selector_ms) << '\n';
}

Stats mean_stderr(const std::vector<double>& xs) {
  Stats s;
  if (xs.empty()) return s;
  const double n = static_cast<double>(xs.size());
  for (double x : xs) s.mean += x;
  s.mean /= n;
  if (xs.size() < 2) return s;
  double ss = 0.0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  s.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return s;
}

std::vector<SelectorSummary> summarize(const std::vector<BenchRecord>& records) {
  std::vector<SelectorSummary> out;
  for (SelectorKind kind : kAllSelectors) {
    std::vector<double> xs;
    for (const BenchRecord& r : records)
      if (r.selector == kind) xs.push_back(static_cast<double>(r.edges_evaluated));
    if (xs.empty()) continue;
    const Stats s = mean_stderr(xs);
    out.push_back({kind, xs.size(), s.mean, s.std_error});
  }
  return out;
}

void write_summary_json(std::ostream& out, ProblemClass cls, const std::vector<SelectorSummary>& summary) {
  nlohmann::ordered_json j;
  j["class"] = problem_class_name(cls);
  auto& arr = j["selectors"] = nlohmann::ordered_json::array();
  for (const SelectorSummary& s : summary)
    arr.push_back({{"selector", selector_name(s.selector)},
                   {"letter", std::string(1, selector_letter(s.selector))},
                   {"n", s.n},
                   {"mean", s.mean},
                   {"stderr", s.std_error}});
  out << j.dump(2) << '\n';
}

}  // namespace lazysp
