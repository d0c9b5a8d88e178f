// lazysp: run / bench / equiv / gen front end.
//
// Exit codes: 0 ok, 1 algorithmic failure, 2 usage or input error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lazysp/engine.hpp"
#include "lazysp/equivalence.hpp"
#include "lazysp/experiments.hpp"
#include "lazysp/problem.hpp"
#include "lazysp/random.hpp"
#include "lazysp/selectors.hpp"

using namespace lazysp;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EngineFlags {
  bool immediate_expansion = false;
  bool no_early_return = false;
  std::size_t max_iterations = 0;

  EngineOptions options() const {
    EngineOptions o;
    o.immediate_expansion = immediate_expansion;
    o.infinite_early_return = !no_early_return;
    if (max_iterations > 0) o.max_iterations = max_iterations;
    return o;
  }
};

void add_engine_flags(CLI::App* app, EngineFlags& f) {
  app->add_flag("--immediate-expansion", f.immediate_expansion,
                "Skip the re-search while evaluations come back no heavier than estimated");
  app->add_flag("--no-early-return", f.no_early_return,
                "Keep evaluating when the lazy graph has no finite path");
  app->add_option("--max-iterations", f.max_iterations, "Abort after this many iterations (0 = no cap)");
}

SelectorKind selector_from(const std::string& name) {
  auto k = parse_selector(name);
  if (!k) throw UsageError("unknown selector '" + name + "'");
  return *k;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  return out;
}

// ------------------------------------------------------------------ run

struct RunArgs {
  std::string graph;
  std::optional<int> start, goal;
  std::string selector = "forward";
  std::optional<double> beta;
  std::size_t ws_samples = 1000;
  double ws_collision_prob = 0.1;
  std::uint64_t seed = 0;
  std::string trace;
  std::string zcache;
  EngineFlags engine;
};

int cmd_run(const RunArgs& a) {
  const SelectorKind kind = selector_from(a.selector);
  if (kind == SelectorKind::Partition && !a.beta) throw UsageError("--beta is required for the partition selector");

  GraphFile gf;
  try {
    gf = read_graph_file(a.graph);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  Query q = gf.query.value_or(Query{});
  if (a.start) q.start = *a.start;
  if (a.goal) q.goal = *a.goal;
  try {
    validate_query(gf.graph, q);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad query: ") + e.what() + " (give --start/--goal)");
  }

  SelectorOptions so;
  so.beta = a.beta;
  so.ws_samples = a.ws_samples;
  so.seed = a.seed;
  // Graph files carry no belief model: valid weight = estimate.
  so.belief = EdgeBeliefModel::fixed(gf.estimates, a.ws_collision_prob);
  if (kind == SelectorKind::Partition && !a.zcache.empty()) {
    const std::uint64_t key = graph_hash(gf.graph, gf.estimates);
    auto z = load_zcache(a.zcache, key, *a.beta);
    if (!z) {
      z = z_init(gf.graph, *a.beta, gf.estimates);
      if (!z->divergent()) save_zcache(a.zcache, key, *z);
    }
    so.z_initial = std::make_shared<const ZMatrix>(std::move(*z));
  }
  auto selector = make_selector(kind, so);

  WeightOracle oracle(gf.true_weights);
  const RunResult r = run_lazysp(gf.graph, q, oracle, gf.estimates, *selector, a.engine.options());

  std::cout << "path:";
  if (r.result.found())
    for (VertexId v : r.result.path->vertices) std::cout << ' ' << v;
  else
    std::cout << " none";
  std::cout << "\nlength: " << format_weight(r.result.length) << "\nevaluations: " << oracle.evaluation_count()
            << "\niterations: " << r.trace.iterations << "\nsearches: " << r.trace.searches << '\n';

  if (!a.trace.empty()) {
    if (a.trace == "-") {
      write_trace_jsonl(std::cout, r.trace);
    } else {
      auto out = open_out(a.trace);
      write_trace_jsonl(out, r.trace);
    }
  }
  return kOk;
}

// ------------------------------------------------------------------ bench

struct BenchArgs {
  std::string cls;
  std::optional<std::size_t> instances;
  std::vector<std::string> selectors{"all"};
  std::uint64_t seed = 0;
  std::optional<double> beta;
  std::string edge_model;
  std::size_t ws_samples = 1000;
  std::optional<double> ws_collision_prob;
  int jobs = 1;
  bool timing = false;
  std::string csv;
  std::string summary;
  std::string zcache;
  EngineFlags engine;
};

int cmd_bench(const BenchArgs& a) {
  BenchConfig cfg;
  cfg.cls = *parse_problem_class(a.cls);
  cfg.instances = a.instances;
  cfg.seed = a.seed;
  cfg.beta = a.beta;
  if (!a.edge_model.empty()) cfg.edge_model = parse_edge_model(a.edge_model);
  cfg.ws_samples = a.ws_samples;
  cfg.ws_collision_prob = a.ws_collision_prob;
  cfg.jobs = a.jobs;
  cfg.timing = a.timing;
  cfg.zcache = a.zcache;
  cfg.engine = a.engine.options();
  if (!(a.selectors.size() == 1 && a.selectors[0] == "all")) {
    cfg.selectors.clear();
    for (const std::string& s : a.selectors) cfg.selectors.push_back(selector_from(s));
  }

  const std::vector<BenchRecord> records = run_bench(cfg);

  if (a.csv.empty() || a.csv == "-") {
    write_bench_csv(std::cout, records);
  } else {
    auto out = open_out(a.csv);
    write_bench_csv(out, records);
  }
  const auto summary = summarize(records);
  if (!a.summary.empty()) {
    auto out = open_out(a.summary);
    write_summary_json(out, cfg.cls, summary);
  }
  for (const SelectorSummary& s : summary)
    std::cerr << selector_letter(s.selector) << ' ' << std::setw(10) << selector_name(s.selector) << "  mean "
              << std::fixed << std::setprecision(2) << s.mean << "  se " << s.std_error << "  n " << s.n << '\n';

  std::size_t bad = 0;
  for (const BenchRecord& r : records)
    if (!r.optimal) ++bad;
  if (bad > 0) {
    std::cerr << "error: " << bad << " runs returned a non-optimal path\n";
    return kFailure;
  }
  return kOk;
}

// ------------------------------------------------------------------ equiv

struct EquivArgs {
  std::string pair;
  int graphs = 200;
  int max_vertices = 12;
  std::uint64_t seed = 0;
  bool undirected = false;
  bool integer_weights = false;
  std::string counterexample;
};

int cmd_equiv(const EquivArgs& a) {
  const EquivPair pair = *parse_equiv_pair(a.pair);
  RandomGraphConfig rc;
  rc.max_vertices = a.max_vertices;
  rc.directed = !a.undirected;
  rc.integer_weights = a.integer_weights;
  std::size_t states = 0;
  for (int i = 0; i < a.graphs; ++i) {
    const ProblemInstance inst = random_small_instance(rc, derive_seed(a.seed, static_cast<std::uint64_t>(i)));
    EquivWalkStats stats;
    const auto fail = equivalence_walk(pair, inst, derive_seed(a.seed, static_cast<std::uint64_t>(i), 1), &stats);
    states += stats.states;
    if (!fail) continue;

    std::ostringstream dump;
    dump << "# " << equiv_pair_name(pair) << " mismatch on graph " << i << ": " << fail->message << "\n# evaluated:";
    for (EdgeId e : fail->evaluated) dump << ' ' << e;
    dump << '\n' << serialize_instance(inst);
    if (a.counterexample.empty()) {
      std::cout << dump.str();
    } else {
      auto out = open_out(a.counterexample);
      out << dump.str();
    }
    std::cerr << "FAIL " << equiv_pair_name(pair) << " graph " << i << ": " << fail->message << '\n';
    return kFailure;
  }
  std::cout << equiv_pair_name(pair) << ": " << a.graphs << " graphs, " << states << " states, 0 mismatches\n";
  return kOk;
}

// ------------------------------------------------------------------ gen

struct GenArgs {
  std::string cls;
  std::size_t instance = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  BenchConfig cfg;
  cfg.cls = *parse_problem_class(a.cls);
  cfg.seed = a.seed;
  ProblemInstance inst;
  try {
    inst = bench_instance(cfg, a.instance);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (a.out.empty() || a.out == "-") {
    write_graph(std::cout, inst.graph, inst.estimates, inst.true_weights, inst.query);
  } else {
    auto out = open_out(a.out);
    write_graph(out, inst.graph, inst.estimates, inst.true_weights, inst.query);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lazy shortest path toolkit"};
  app.require_subcommand(1);

  const std::vector<std::string> selector_names = {"expand",    "forward",    "reverse",  "alternate",
                                                   "bisection", "weightsamp", "partition"};

  RunArgs ra;
  auto* run = app.add_subcommand("run", "One LazySP run on a graph file");
  run->add_option("--graph", ra.graph, "Graph file")->required();
  run->add_option("--start", ra.start, "Start vertex (default: from the file's query line)");
  run->add_option("--goal", ra.goal, "Goal vertex (default: from the file's query line)");
  run->add_option("--selector", ra.selector, "Edge selector")->check(CLI::IsMember(selector_names));
  run->add_option("--beta", ra.beta, "Partition selector beta")->check(CLI::PositiveNumber);
  run->add_option("--ws-samples", ra.ws_samples, "WeightSamp samples per iteration")->check(CLI::PositiveNumber);
  run->add_option("--ws-collision-prob", ra.ws_collision_prob, "WeightSamp per-edge collision probability")
      ->check(CLI::Range(0.0, 1.0));
  run->add_option("--seed", ra.seed, "Random seed");
  run->add_option("--trace", ra.trace, "Write the per-iteration JSONL trace here ('-' = stdout)");
  run->add_option("--zcache", ra.zcache, "Cache file for the estimate-only partition matrix");
  add_engine_flags(run, ra.engine);

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Benchmark selectors on a generated problem class");
  bench->add_option("--class", ba.cls, "Problem class")->required()->check(CLI::IsMember({"partconn", "unitsquare"}));
  bench->add_option("--instances", ba.instances, "Number of instances (default 1000 / 900)");
  bench->add_option("--selectors", ba.selectors, "Comma-separated selectors or 'all'")->delimiter(',');
  bench->add_option("--seed", ba.seed, "Random seed");
  bench->add_option("--beta", ba.beta, "Partition beta (default 2 / 21)")->check(CLI::PositiveNumber);
  bench->add_option("--edge-model", ba.edge_model,
                    "Undirected edges evaluated once (edges) or per direction (arcs); default arcs for partconn, "
                    "edges for unitsquare")
      ->check(CLI::IsMember({"edges", "arcs"}));
  bench->add_option("--ws-samples", ba.ws_samples, "WeightSamp samples per iteration")->check(CLI::PositiveNumber);
  bench->add_option("--ws-collision-prob", ba.ws_collision_prob, "UnitSquare WeightSamp collision probability")
      ->check(CLI::Range(0.0, 1.0));
  bench->add_option("--jobs", ba.jobs, "Instances run in parallel")->check(CLI::PositiveNumber);
  bench->add_flag("--timing", ba.timing, "Fill the search_ms/selector_ms columns (not reproducible)");
  bench->add_option("--csv", ba.csv, "CSV output (default stdout)");
  bench->add_option("--summary", ba.summary, "Summary JSON output");
  bench->add_option("--zcache", ba.zcache, "Cache file for the unitsquare estimate-only partition matrix");
  add_engine_flags(bench, ba.engine);

  EquivArgs ea;
  auto* equiv = app.add_subcommand("equiv", "Differential equivalence test against A* / LWA*");
  equiv->add_option("--pair", ea.pair, "Pair to compare")
      ->required()
      ->check(CLI::IsMember({"expand-astar", "forward-lwastar"}));
  equiv->add_option("--graphs", ea.graphs, "Random graphs")->check(CLI::PositiveNumber);
  equiv->add_option("--max-vertices", ea.max_vertices, "Largest graph")->check(CLI::Range(2, 64));
  equiv->add_option("--seed", ea.seed, "Random seed");
  equiv->add_flag("--undirected", ea.undirected, "Use undirected graphs");
  equiv->add_flag("--integer-weights", ea.integer_weights,
                  "Integer weights, so equal-length paths are common (exposes exact-tie gaps)");
  equiv->add_option("--counterexample", ea.counterexample, "Write a failing graph here");

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "Write a generated instance in the graph file format");
  gen->add_option("--class", ga.cls, "Problem class")->required()->check(CLI::IsMember({"partconn", "unitsquare"}));
  gen->add_option("--instance", ga.instance, "Instance id");
  gen->add_option("--seed", ga.seed, "Random seed");
  gen->add_option("--out", ga.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(ra);
    if (*bench) return cmd_bench(ba);
    if (*equiv) return cmd_equiv(ea);
    if (*gen) return cmd_gen(ga);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}
