#pragma once

#include <span>
#include <vector>

#include "bandsim/core.hpp"
#include "json.hpp"

namespace bandsim {

// Tabular Q-learning over a reduced state: one row per app (or per
// (app, price level) pair), one column per provider.
class QTable {
 public:
  QTable(std::size_t states, std::size_t providers, double alpha, double gamma);

  /// q(s,a) += alpha * (reward + gamma * max_a' q(s_next, a') - q(s,a)).
  void update(std::size_t state, ProviderIndex action, double reward, std::size_t next_state);

  double value(std::size_t state, ProviderIndex action) const;
  double max_value(std::size_t state) const;

  std::size_t states() const noexcept { return states_; }
  std::size_t providers() const noexcept { return providers_; }
  double alpha() const noexcept { return alpha_; }
  double gamma() const noexcept { return gamma_; }

  /// Overwrites one cell; intended for tests and checkpoint restore.
  void set(std::size_t state, ProviderIndex action, double value);

  nlohmann::json to_json() const;

 private:
  std::size_t index(std::size_t state, ProviderIndex action) const;

  std::size_t states_;
  std::size_t providers_;
  double alpha_;
  double gamma_;
  std::vector<double> q_;
};

/// argmax_a q(keys[a], a) with random tie-break; keys holds each provider's
/// current state key.
ProviderIndex q_select(const QTable& table, std::span<const std::size_t> keys, Rng& rng);

/// argmax_a q(keys[a], a) * probabilities[a]: values weighted by the chance
/// that provider a has the best SINR.
ProviderIndex q_sinr_select(const QTable& table, std::span<const std::size_t> keys,
                            std::span<const double> probabilities, Rng& rng);

}  // namespace bandsim
