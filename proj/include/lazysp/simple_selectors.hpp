#pragma once

#include <vector>

#include "lazysp/selector.hpp"

namespace lazysp {

/// Expand, Forward, Reverse, Alternate and Bisection.
///
/// Throws std::invalid_argument for any other kind, and std::logic_error if
/// the candidate has no unevaluated edge.
std::vector<EdgeId> select_simple(SelectorKind kind, const SelectorContext& ctx);

class SimpleSelector final : public Selector {
 public:
  explicit SimpleSelector(SelectorKind kind);

  SelectorKind kind() const override { return kind_; }
  std::vector<EdgeId> select(const SelectorContext& ctx) override { return select_simple(kind_, ctx); }

 private:
  SelectorKind kind_;
};

}  // namespace lazysp
