#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lazysp/graph.hpp"
#include "lazysp/weights.hpp"

namespace lazysp {

enum class SelectorKind { Expand, Forward, Reverse, Alternate, Bisection, WeightSamp, Partition };

inline constexpr SelectorKind kAllSelectors[] = {
    SelectorKind::Expand,    SelectorKind::Forward,    SelectorKind::Reverse,  SelectorKind::Alternate,
    SelectorKind::Bisection, SelectorKind::WeightSamp, SelectorKind::Partition};

std::string_view selector_name(SelectorKind kind);
// One-letter plot label: E F R A B W P.
char selector_letter(SelectorKind kind);
std::optional<SelectorKind> parse_selector(std::string_view name);

/// What a selector sees on each LazySP iteration.
struct SelectorContext {
  const Graph& graph;
  Query query;
  const Path& candidate;
  const LazyWeightState& state;
  int iteration;  // 1-based
};

/// Pluggable edge selector.
///
/// The engine calls begin_run() once before the first iteration and
/// on_evaluated() after each new evaluation, so stateful selectors can keep
/// their own model of w_lazy in sync.
class Selector {
 public:
  virtual ~Selector() = default;

  virtual SelectorKind kind() const = 0;
  virtual void begin_run(const Graph& /*g*/, Query /*q*/, const LazyWeightState& /*state*/) {}
  virtual std::vector<EdgeId> select(const SelectorContext& ctx) = 0;
  virtual void on_evaluated(EdgeId /*e*/, double /*old_lazy*/, double /*new_lazy*/) {}
};

// Positions (indices into candidate.edges) of unevaluated candidate edges.
std::vector<std::size_t> unevaluated_positions(const SelectorContext& ctx);

}  // namespace lazysp
