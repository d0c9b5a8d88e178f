#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>

#include "lazysp/partition.hpp"
#include "lazysp/selector.hpp"
#include "lazysp/simple_selectors.hpp"
#include "lazysp/weightsamp.hpp"

namespace lazysp {

// Knobs for the stateful selectors; ignored by the simple ones.
struct SelectorOptions {
  std::optional<double> beta;             // partition
  std::optional<EdgeBeliefModel> belief;  // weightsamp
  std::size_t ws_samples = 1000;
  std::uint64_t seed = 0;
  std::shared_ptr<const ZMatrix> z_initial;
};

// Throws std::invalid_argument when a required knob is missing.
std::unique_ptr<Selector> make_selector(SelectorKind kind, const SelectorOptions& opts);

}  // namespace lazysp
