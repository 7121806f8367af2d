#pragma once

#include <span>

#include "bandsim/core.hpp"
#include "bandsim/estimators.hpp"

namespace bandsim {

/// Contextual Monte-Carlo choice: predicts each provider's throughput for the
/// current app from its history, scores it with the app's utility at the
/// current price and returns the argmax. Providers without samples score 0.
///
/// `throughput` is keyed by app (context) and provider.
ProviderIndex expected_utility_select(const ActionValueTable& throughput, const Context& ctx,
                                      std::span<const AppProfile> apps, Rng& rng);

/// Non-contextual bandit: argmax of mean realised reward per provider.
ProviderIndex history_select(const ActionValueTable& rewards, Rng& rng);

/// argmax_a Q(s,a) + c sqrt(ln t / N(s,a)); for c > 0 untried arms win
/// outright, for c = 0 this is the greedy choice.
ProviderIndex ucb_select(const ActionValueTable& table, std::size_t context, std::size_t t,
                         double c, Rng& rng);

/// argmin price, random tie-break.
ProviderIndex lowest_price_select(const Context& ctx, Rng& rng);

/// Fair draw over k providers.
ProviderIndex random_select(std::size_t k, Rng& rng);

/// With probability epsilon a uniform provider, otherwise `base()`. No random
/// number is consumed when epsilon is 0 or 1.
template <class BaseSelect>
ProviderIndex epsilon_greedy(BaseSelect&& base, double epsilon, std::size_t k, Rng& rng) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw Error(ErrorCode::invalid_argument, "epsilon must lie in [0, 1]");
  if (epsilon <= 0.0) return base();
  if (epsilon >= 1.0) return random_select(k, rng);
  if (rng.bernoulli(epsilon)) return random_select(k, rng);
  return base();
}

}  // namespace bandsim
