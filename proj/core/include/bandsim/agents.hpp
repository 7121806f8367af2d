#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bandsim/core.hpp"
#include "bandsim/estimators.hpp"
#include "bandsim/gradient.hpp"
#include "json.hpp"

namespace bandsim {

// What a DUT's agent sees before choosing a provider in one step.
struct Observation {
  std::size_t step = 0;
  AppId app = 0;
  std::vector<double> prices;             // per provider
  std::vector<double> sinr;               // per provider, linear; may be empty
  std::vector<bool> popular;              // dual-speed popularity; may be empty
  std::vector<std::size_t> price_levels;  // per provider index into its price ladder

  Context context() const { return {app, prices}; }
};

struct Outcome {
  ProviderIndex provider = 0;
  double throughput_mbps = 0.0;
  double price = 0.0;
  double reward = 0.0;
};

enum class PolicyKind {
  expected_utility,
  history,
  rl,
  ucb,
  gradient,
  q_sinr,
  lowest_price,
  random,
};

std::string_view to_string(PolicyKind kind) noexcept;
PolicyKind policy_kind_from_string(std::string_view name);
std::string_view display_name(PolicyKind kind) noexcept;

enum class QStateKey { app, app_price };

struct PolicySpec {
  PolicyKind kind = PolicyKind::expected_utility;
  std::string label;  // report name; defaults to the display name
  double epsilon = 0.0;
  EstimatorMode estimator = EstimatorMode::last(2);
  double c = 1.0;      // UCB
  double alpha = 0.2;  // Q-learning
  double gamma = 0.7;
  double delta = 0.1;  // gradient step
  double beta = 1.0;   // SINR softmax
  BaselineKind baseline = BaselineKind::arithmetic;
  double baseline_smoothing = 0.1;
  QStateKey state_key = QStateKey::app;

  static PolicySpec of(PolicyKind kind);
  std::string name() const { return label.empty() ? std::string(display_name(kind)) : label; }
  void validate() const;

  nlohmann::json to_json() const;
  static PolicySpec from_json(const nlohmann::json& j);
};

// A provider-selection policy owned by one DUT.
class Agent {
 public:
  virtual ~Agent() = default;

  virtual std::string name() const = 0;

  /// Called once per step before any decision (including training steps).
  virtual void observe(const Observation&) {}
  virtual ProviderIndex choose(const Observation& obs, Rng& rng) = 0;
  /// Feedback for the provider used in the step described by `obs`.
  virtual void learn(const Observation& obs, const Outcome& outcome) = 0;

  virtual nlohmann::json state() const = 0;
};

/// `price_levels` is the number of price states per provider (used only by
/// Q-learning keyed on (app, price level)).
std::unique_ptr<Agent> make_agent(const PolicySpec& spec, std::span<const AppProfile> apps,
                                  std::size_t providers, std::size_t price_levels = 2);

}  // namespace bandsim
