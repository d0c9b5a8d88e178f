#include "lazysp/simple_selectors.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace lazysp {

namespace {

constexpr std::array<std::string_view, 7> kNames = {"expand",    "forward",    "reverse",  "alternate",
                                                     "bisection", "weightsamp", "partition"};
constexpr std::array<char, 7> kLetters = {'E', 'F', 'R', 'A', 'B', 'W', 'P'};

// Unevaluated position furthest from the nearest evaluated path edge.
// Virtual evaluated edges sit just before the first and after the last
// position, so a fresh path bisects at its middle. Ties go to the earliest.
std::size_t bisection_position(const SelectorContext& ctx, const std::vector<std::size_t>& open) {
  const std::size_t k = ctx.candidate.edges.size();
  std::vector<long> evaluated{-1};
  for (std::size_t i = 0; i < k; ++i)
    if (ctx.state.is_evaluated(ctx.candidate.edges[i])) evaluated.push_back(static_cast<long>(i));
  evaluated.push_back(static_cast<long>(k));

  std::size_t best = open.front();
  long best_dist = -1;
  for (std::size_t pos : open) {
    const long p = static_cast<long>(pos);
    // evaluated is sorted; nearest is adjacent to the insertion point.
    auto it = std::lower_bound(evaluated.begin(), evaluated.end(), p);
    long d = *it - p;
    if (it != evaluated.begin()) d = std::min(d, p - *std::prev(it));
    if (d > best_dist) {
      best_dist = d;
      best = pos;
    }
  }
  return best;
}

}  // namespace

std::string_view selector_name(SelectorKind kind) { return kNames[static_cast<std::size_t>(kind)]; }

char selector_letter(SelectorKind kind) { return kLetters[static_cast<std::size_t>(kind)]; }

std::optional<SelectorKind> parse_selector(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == name) return static_cast<SelectorKind>(i);
  return std::nullopt;
}

std::vector<std::size_t> unevaluated_positions(const SelectorContext& ctx) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ctx.candidate.edges.size(); ++i)
    if (!ctx.state.is_evaluated(ctx.candidate.edges[i])) out.push_back(i);
  return out;
}

std::vector<EdgeId> select_simple(SelectorKind kind, const SelectorContext& ctx) {
  const std::vector<std::size_t> open = unevaluated_positions(ctx);
  if (open.empty()) throw std::logic_error("selector invoked on a fully evaluated candidate");
  const auto& edges = ctx.candidate.edges;

  switch (kind) {
    case SelectorKind::Expand: {
      const VertexId frontier = ctx.candidate.vertices[open.front()];
      std::vector<EdgeId> out;
      for (const Arc& arc : ctx.graph.out_arcs(frontier)) out.push_back(arc.edge);
      return out;
    }
    case SelectorKind::Forward:
      return {edges[open.front()]};
    case SelectorKind::Reverse:
      return {edges[open.back()]};
    case SelectorKind::Alternate:
      return {edges[ctx.iteration % 2 == 1 ? open.front() : open.back()]};
    case SelectorKind::Bisection:
      return {edges[bisection_position(ctx, open)]};
    default:
      throw std::invalid_argument("not a simple selector: " + std::string(selector_name(kind)));
  }
}

SimpleSelector::SimpleSelector(SelectorKind kind) : kind_(kind) {
  switch (kind) {
    case SelectorKind::WeightSamp:
    case SelectorKind::Partition:
      throw std::invalid_argument("not a simple selector: " + std::string(selector_name(kind)));
    default:
      break;
  }
}

}  // namespace lazysp
