#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lazysp/engine.hpp"
#include "lazysp/partition.hpp"
#include "lazysp/problem.hpp"
#include "lazysp/selector.hpp"

namespace lazysp {

// Radical inverse of `index` (>= 1) in `base` (>= 2).
double halton(std::uint64_t index, unsigned base);

struct PartConnConfig {
  int n_vertices = 100;
  double edge_probability = 0.05;
  double p_infinite = 0.5;
  double weight_lo = 1.0;
  double weight_hi = 2.0;
  double estimate = 1.0;
};

/// Undirected G(n, p) graph; each true weight is +inf with p_infinite,
/// else uniform on [lo, hi]; every estimate is `estimate`. Start and goal
/// are distinct uniform vertices, redrawn until they are connected.
ProblemInstance gen_partconn(const PartConnConfig& cfg, std::uint64_t seed);

struct Box {
  double x0, y0, x1, y1;
};

// Closed segment vs closed box (slab clipping); touching counts.
bool segment_intersects_box(std::array<double, 2> a, std::array<double, 2> b, const Box& box);

struct UnitSquareConfig {
  int n_points = 100;
  double radius = 0.15;
  int n_queries = 30;
  int n_fields = 30;
  int boxes_per_field = 10;
  double box_lo = 0.1;
  double box_hi = 0.3;
};

/// Obstacle-free roadmap: Halton (2,3) points with indices 1..n, undirected
/// edges between pairs at distance <= radius. Estimates are edge lengths.
struct Roadmap {
  Graph graph;
  std::vector<std::array<double, 2>> coords;
  std::vector<double> lengths;
};
Roadmap unitsquare_roadmap(const UnitSquareConfig& cfg);

// Distinct uniform vertices, redrawn until connected in the free roadmap.
Query gen_unitsquare_query(const Roadmap& rm, std::uint64_t seed);
// Boxes with lower-left corner uniform in the unit square and side
// lengths uniform on [box_lo, box_hi]; they may stick out of the square.
std::vector<Box> gen_obstacles(const UnitSquareConfig& cfg, std::uint64_t seed);
ProblemInstance gen_unitsquare(const Roadmap& rm, Query q, const std::vector<Box>& obstacles);

enum class ProblemClass { PartConn, UnitSquare };
std::optional<ProblemClass> parse_problem_class(std::string_view name);
std::string_view problem_class_name(ProblemClass c);

// How an undirected instance is handed to the engine. Edges: one evaluation
// per undirected edge. Arcs: each edge becomes two directed arcs with the
// same weight, evaluated (and counted) independently. Only Expand's count
// differs in practice, since it selects every arc out of a vertex.
enum class EdgeModel { Edges, Arcs };

std::optional<EdgeModel> parse_edge_model(std::string_view name);
std::string_view edge_model_name(EdgeModel m);
EdgeModel default_edge_model(ProblemClass c);  // partconn: arcs, unitsquare: edges

// Arc 2e is edge(e).u -> v, arc 2e+1 the reverse. Directed input is returned as is.
ProblemInstance split_into_arcs(const ProblemInstance& inst);

struct BenchConfig {
  ProblemClass cls = ProblemClass::PartConn;
  std::vector<SelectorKind> selectors{std::begin(kAllSelectors), std::end(kAllSelectors)};
  std::optional<std::size_t> instances;  // default 1000 / n_queries * n_fields
  std::uint64_t seed = 0;
  std::optional<double> beta;            // default 2 / 21
  std::optional<EdgeModel> edge_model;   // default per class
  std::size_t ws_samples = 1000;
  std::optional<double> ws_collision_prob;  // unitsquare belief, default 0.1
  int jobs = 1;
  bool timing = false;
  EngineOptions engine;
  std::string zcache;  // unitsquare estimate-only Z cache path, optional
  PartConnConfig partconn;
  UnitSquareConfig unitsquare;
};

struct BenchRecord {
  ProblemClass cls;
  int instance;
  SelectorKind selector;
  std::size_t edges_evaluated;
  double length;
  bool optimal;
  double search_ms;
  double selector_ms;
};

double default_beta(ProblemClass c);

/// Instance `id` of the benchmark described by `cfg` (class, seed and
/// generator parameters). `roadmap` is reused for unitsquare when given.
ProblemInstance bench_instance(const BenchConfig& cfg, std::size_t id, const Roadmap* roadmap = nullptr);

/// One fresh engine run per (instance, selector). Records come back sorted
/// by instance, then by selector in `selectors` order. Throws if any run
/// fails; optimality is recorded per record, not enforced.
std::vector<BenchRecord> run_bench(const BenchConfig& cfg);

// Optimal under true weights up to a 1e-9 relative tolerance.
bool lengths_match(double returned, double optimal);

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);

struct SelectorSummary {
  SelectorKind selector;
  std::size_t n;
  double mean;
  double std_error;  // sample sd / sqrt(n)
};

struct Stats {
  double mean = 0.0;
  double std_error = 0.0;
};
Stats mean_stderr(const std::vector<double>& xs);

std::vector<SelectorSummary> summarize(const std::vector<BenchRecord>& records);
void write_summary_json(std::ostream& out, ProblemClass cls, const std::vector<SelectorSummary>& summary);

}  // namespace lazysp
