#include "lazysp/selectors.hpp"

#include <stdexcept>

namespace lazysp {

std::unique_ptr<Selector> make_selector(SelectorKind kind, const SelectorOptions& opts) {
  switch (kind) {
    case SelectorKind::WeightSamp:
      if (!opts.belief) throw std::invalid_argument("weightsamp needs an edge belief model");
      return std::make_unique<WeightSampSelector>(*opts.belief, opts.ws_samples, opts.seed);
    case SelectorKind::Partition:
      if (!opts.beta) throw std::invalid_argument("partition needs --beta");
      return std::make_unique<PartitionSelector>(*opts.beta, opts.z_initial);
    default:
      return std::make_unique<SimpleSelector>(kind);
  }
}

}  // namespace lazysp
