#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lazysp/graph.hpp"

namespace lazysp {

/// A graph with its query, true weights (behind the oracle) and estimates.
struct ProblemInstance {
  Graph graph;
  Query query;
  std::vector<double> true_weights;
  std::vector<double> estimates;
  // Vertex coordinates, only for geometric instances.
  std::vector<std::array<double, 2>> coords;
};

// Graph text format, one record per line:
//   graph <n_vertices> <n_edges> <directed|undirected>
//   edge <id> <u> <v> <w_est> <w_true>
// Weights may be the literal `inf`. Blank lines and lines starting with '#'
// are ignored, except that `# query <start> <goal>` supplies a default query.
struct GraphFile {
  Graph graph;
  std::vector<double> estimates;
  std::vector<double> true_weights;
  std::optional<Query> query;
};

GraphFile read_graph(std::istream& in);
GraphFile read_graph_file(const std::string& path);

void write_graph(std::ostream& out, const Graph& g, const std::vector<double>& estimates,
                 const std::vector<double>& true_weights, std::optional<Query> query = {});

// Extended-real formatting shared by every writer: `inf` or shortest
// round-trip decimal.
std::string format_weight(double w);
double parse_weight(const std::string& token);

}  // namespace lazysp
