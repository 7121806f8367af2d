#include "bandsim/qlearning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bandsim {

QTable::QTable(std::size_t states, std::size_t providers, double alpha, double gamma)
    : states_(states), providers_(providers), alpha_(alpha), gamma_(gamma),
      q_(states * providers, 0.0) {
  if (states == 0 || providers == 0)
    throw Error(ErrorCode::invalid_argument, "Q-table needs states and providers");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw Error(ErrorCode::invalid_argument, "Q-learning step size must lie in [0, 1]");
  if (!(gamma >= 0.0 && gamma < 1.0))
    throw Error(ErrorCode::invalid_argument, "discount factor must lie in [0, 1)");
}

std::size_t QTable::index(std::size_t state, ProviderIndex action) const {
  if (state >= states_ || action >= providers_)
    throw Error(ErrorCode::invalid_argument, "Q-table index out of range");
  return state * providers_ + action;
}

void QTable::update(std::size_t state, ProviderIndex action, double reward,
                    std::size_t next_state) {
  const double target = reward + gamma_ * max_value(next_state);
  double& q = q_[index(state, action)];
  q += alpha_ * (target - q);
}

double QTable::value(std::size_t state, ProviderIndex action) const {
  return q_[index(state, action)];
}

double QTable::max_value(std::size_t state) const {
  const auto first = q_.begin() + static_cast<std::ptrdiff_t>(index(state, 0));
  return *std::max_element(first, first + static_cast<std::ptrdiff_t>(providers_));
}

void QTable::set(std::size_t state, ProviderIndex action, double value) {
  q_[index(state, action)] = value;
}

nlohmann::json QTable::to_json() const {
  nlohmann::json q = nlohmann::json::object();
  for (std::size_t s = 0; s < states_; ++s)
    for (ProviderIndex a = 0; a < providers_; ++a)
      q[std::to_string(s + 1)][std::to_string(a + 1)] = value(s, a);
  return {{"alpha", alpha_}, {"gamma", gamma_}, {"states", states_},
          {"providers", providers_}, {"q", q}};
}

ProviderIndex q_select(const QTable& table, std::span<const std::size_t> keys, Rng& rng) {
  if (keys.size() != table.providers())
    throw Error(ErrorCode::invalid_argument, "q_select needs one key per provider");
  std::vector<double> scores(keys.size());
  for (ProviderIndex a = 0; a < keys.size(); ++a) scores[a] = table.value(keys[a], a);
  return argmax_random_tie(scores, rng);
}

ProviderIndex q_sinr_select(const QTable& table, std::span<const std::size_t> keys,
                            std::span<const double> probabilities, Rng& rng) {
  if (keys.size() != table.providers() || probabilities.size() != table.providers())
    throw Error(ErrorCode::invalid_argument, "q_sinr_select needs one key and weight per provider");
  const double total = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9)
    throw Error(ErrorCode::invalid_argument, "SINR weights must sum to 1");
  std::vector<double> scores(keys.size());
  for (ProviderIndex a = 0; a < keys.size(); ++a)
    scores[a] = table.value(keys[a], a) * probabilities[a];
  return argmax_random_tie(scores, rng);
}

}  // namespace bandsim
