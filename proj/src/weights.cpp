#include "lazysp/weights.hpp"

#include <stdexcept>
#include <string>

namespace lazysp {

WeightOracle::WeightOracle(std::span<const double> true_weights)
    : weights_(true_weights), requested_(true_weights.size(), 0) {
  for (double w : weights_)
    if (!(w >= 0.0)) throw std::invalid_argument("true weights must lie in [0, +inf]");
}

double WeightOracle::evaluate(EdgeId e) {
  const auto i = static_cast<std::size_t>(e);
  if (i >= weights_.size()) throw std::out_of_range("edge id " + std::to_string(e));
  if (!requested_[i]) {
    requested_[i] = 1;
    ++count_;
  }
  return weights_[i];
}

LazyWeightState::LazyWeightState(std::span<const double> estimates)
    : estimates_(estimates),
      lazy_(estimates.begin(), estimates.end()),
      evaluated_(estimates.size(), 0) {
  for (double w : estimates_)
    if (!(w >= 0.0)) throw std::invalid_argument("estimates must lie in [0, +inf]");
}

void LazyWeightState::record(EdgeId e, double true_weight) {
  const auto i = static_cast<std::size_t>(e);
  if (i >= lazy_.size()) throw std::out_of_range("edge id " + std::to_string(e));
  if (evaluated_[i]) throw std::logic_error("edge " + std::to_string(e) + " already evaluated");
  evaluated_[i] = 1;
  lazy_[i] = true_weight;
  order_.push_back(e);
}

double evaluate_edge(LazyWeightState& state, WeightOracle& oracle, EdgeId e) {
  if (state.is_evaluated(e)) return state.lazy_weight(e);
  const double w = oracle.evaluate(e);
  state.record(e, w);
  return w;
}

}  // namespace lazysp
