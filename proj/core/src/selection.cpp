#include "bandsim/selection.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "bandsim/rewards.hpp"

namespace bandsim {

ProviderIndex expected_utility_select(const ActionValueTable& throughput, const Context& ctx,
                                      std::span<const AppProfile> apps, Rng& rng) {
  if (ctx.app >= apps.size() || ctx.app >= throughput.contexts())
    throw Error(ErrorCode::invalid_argument, "context app outside the catalogue");
  if (ctx.providers() != throughput.providers())
    throw Error(ErrorCode::invalid_argument, "price vector does not match provider count");
  const AppProfile& app = apps[ctx.app];
  std::vector<double> scores(ctx.providers(), 0.0);
  for (ProviderIndex a = 0; a < scores.size(); ++a) {
    if (throughput.count(ctx.app, a) == 0) continue;
    scores[a] = app_utility(app, throughput.value(ctx.app, a), ctx.prices[a]);
  }
  return argmax_random_tie(scores, rng);
}

ProviderIndex history_select(const ActionValueTable& rewards, Rng& rng) {
  return argmax_random_tie(rewards.values(0), rng);
}

ProviderIndex ucb_select(const ActionValueTable& table, std::size_t context, std::size_t t,
                         double c, Rng& rng) {
  if (t < 1) throw Error(ErrorCode::invalid_argument, "UCB step must be >= 1");
  if (c < 0.0) throw Error(ErrorCode::invalid_argument, "UCB constant must be non-negative");
  const std::size_t k = table.providers();
  std::vector<double> scores(k);
  const double log_t = std::log(static_cast<double>(t));
  for (ProviderIndex a = 0; a < k; ++a) {
    const std::size_t n = table.count(context, a);
    // with c = 0 the bonus vanishes entirely and untried arms keep Q = 0
    if (n == 0 && c > 0.0) {
      scores[a] = std::numeric_limits<double>::infinity();
      continue;
    }
    scores[a] = table.value(context, a);
    if (n > 0 && c > 0.0) scores[a] += c * std::sqrt(log_t / static_cast<double>(n));
  }
  return argmax_random_tie(scores, rng);
}

ProviderIndex lowest_price_select(const Context& ctx, Rng& rng) {
  ctx.validate();
  std::vector<double> negated(ctx.prices.size());
  for (std::size_t a = 0; a < negated.size(); ++a) negated[a] = -ctx.prices[a];
  return argmax_random_tie(negated, rng);
}

ProviderIndex random_select(std::size_t k, Rng& rng) { return rng.index(k); }

}  // namespace bandsim
