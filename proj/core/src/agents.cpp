#include "bandsim/agents.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "bandsim/qlearning.hpp"
#include "bandsim/selection.hpp"

namespace bandsim {
namespace {

struct KindName {
  PolicyKind kind;
  std::string_view id;
  std::string_view display;
};

constexpr std::array<KindName, 8> kKinds{{
    {PolicyKind::expected_utility, "expected_utility", "ExpectedUtility"},
    {PolicyKind::history, "history", "History"},
    {PolicyKind::rl, "rl", "RL"},
    {PolicyKind::ucb, "ucb", "UCB"},
    {PolicyKind::gradient, "gradient", "Gradient"},
    {PolicyKind::q_sinr, "q_sinr", "QSinr"},
    {PolicyKind::lowest_price, "lowest_price", "LowestPrice"},
    {PolicyKind::random, "random", "Random"},
}};

class ExpectedUtilityAgent final : public Agent {
 public:
  ExpectedUtilityAgent(PolicySpec spec, std::vector<AppProfile> apps, std::size_t providers)
      : spec_(std::move(spec)), apps_(std::move(apps)),
        throughput_(apps_.size(), providers, spec_.estimator) {}

  std::string name() const override { return spec_.name(); }

  ProviderIndex choose(const Observation& obs, Rng& rng) override {
    const Context ctx = obs.context();
    return epsilon_greedy([&] { return expected_utility_select(throughput_, ctx, apps_, rng); },
                          spec_.epsilon, throughput_.providers(), rng);
  }

  void learn(const Observation& obs, const Outcome& out) override {
    throughput_.record(obs.app, out.provider, out.throughput_mbps);
  }

  nlohmann::json state() const override {
    return {{"policy", spec_.to_json()}, {"throughput", throughput_.to_json()}};
  }

 private:
  PolicySpec spec_;
  std::vector<AppProfile> apps_;
  ActionValueTable throughput_;
};

class HistoryAgent final : public Agent {
 public:
  HistoryAgent(PolicySpec spec, std::size_t providers)
      : spec_(std::move(spec)), rewards_(1, providers, spec_.estimator) {}

  std::string name() const override { return spec_.name(); }

  ProviderIndex choose(const Observation&, Rng& rng) override {
    return epsilon_greedy([&] { return history_select(rewards_, rng); }, spec_.epsilon,
                          rewards_.providers(), rng);
  }

  void learn(const Observation&, const Outcome& out) override {
    rewards_.record(0, out.provider, out.reward);
  }

  nlohmann::json state() const override {
    return {{"policy", spec_.to_json()}, {"rewards", rewards_.to_json()}};
  }

 private:
  PolicySpec spec_;
  ActionValueTable rewards_;
};

class UcbAgent final : public Agent {
 public:
  UcbAgent(PolicySpec spec, std::size_t apps, std::size_t providers)
      : spec_(std::move(spec)), rewards_(apps, providers, spec_.estimator) {}

  std::string name() const override { return spec_.name(); }

  ProviderIndex choose(const Observation& obs, Rng& rng) override {
    return epsilon_greedy(
        [&] { return ucb_select(rewards_, obs.app, std::max<std::size_t>(t_, 1), spec_.c, rng); },
        spec_.epsilon, rewards_.providers(), rng);
  }

  void learn(const Observation& obs, const Outcome& out) override {
    rewards_.record(obs.app, out.provider, out.reward);
    ++t_;
  }

  nlohmann::json state() const override {
    return {{"policy", spec_.to_json()}, {"t", t_}, {"rewards", rewards_.to_json()}};
  }

 private:
  PolicySpec spec_;
  ActionValueTable rewards_;
  std::size_t t_ = 0;
};

class GradientAgent final : public Agent {
 public:
  GradientAgent(PolicySpec spec, std::size_t providers)
      : spec_(std::move(spec)),
        prefs_(providers, spec_.delta, spec_.baseline, spec_.baseline_smoothing) {}

  std::string name() const override { return spec_.name(); }

  ProviderIndex choose(const Observation&, Rng& rng) override {
    return epsilon_greedy([&] { return prefs_.sample(rng); }, spec_.epsilon,
                          prefs_.preferences().size(), rng);
  }

  void learn(const Observation&, const Outcome& out) override {
    prefs_.update(out.provider, out.reward);
  }

  nlohmann::json state() const override {
    return {{"policy", spec_.to_json()}, {"preferences", prefs_.to_json()}};
  }

 private:
  PolicySpec spec_;
  PreferenceVector prefs_;
};

// Q-learning on the reduced state. The update for step t needs the state of
// step t+1, so it is held back until the next observation arrives.
class QAgent final : public Agent {
 public:
  QAgent(PolicySpec spec, std::size_t apps, std::size_t providers, std::size_t levels)
      : spec_(std::move(spec)),
        levels_(spec_.state_key == QStateKey::app ? 1 : levels),
        table_(apps * levels_, providers, spec_.alpha, spec_.gamma) {}

  std::string name() const override { return spec_.name(); }

  void observe(const Observation& obs) override {
    if (!pending_) return;
    const auto keys = keys_for(obs);
    double next = table_.value(keys[0], 0);
    for (ProviderIndex a = 1; a < keys.size(); ++a) next = std::max(next, table_.value(keys[a], a));
    // same rule as QTable::update with max over the per-provider next keys
    const double q = table_.value(pending_->state, pending_->action);
    table_.set(pending_->state, pending_->action,
               q + table_.alpha() * (pending_->reward + table_.gamma() * next - q));
    pending_.reset();
  }

  ProviderIndex choose(const Observation& obs, Rng& rng) override {
    const auto keys = keys_for(obs);
    return epsilon_greedy(
        [&] {
          if (spec_.kind == PolicyKind::q_sinr && !obs.sinr.empty())
            return q_sinr_select(table_, keys, sinr_softmax(obs.sinr, spec_.beta), rng);
          return q_select(table_, keys, rng);
        },
        spec_.epsilon, table_.providers(), rng);
  }

  void learn(const Observation& obs, const Outcome& out) override {
    pending_ = Pending{keys_for(obs)[out.provider], out.provider, out.reward};
  }

  nlohmann::json state() const override {
    nlohmann::json j{{"policy", spec_.to_json()}, {"q", table_.to_json()}};
    if (pending_)
      j["pending"] = {{"state", pending_->state + 1},
                      {"provider", pending_->action + 1},
                      {"reward", pending_->reward}};
    return j;
  }

 private:
  struct Pending {
    std::size_t state;
    ProviderIndex action;
    double reward;
  };

  std::vector<std::size_t> keys_for(const Observation& obs) const {
    std::vector<std::size_t> keys(table_.providers(), obs.app * levels_);
    if (levels_ > 1) {
      if (obs.price_levels.size() != keys.size())
        throw Error(ErrorCode::invalid_argument, "price-level state key needs price levels");
      for (std::size_t a = 0; a < keys.size(); ++a) {
        if (obs.price_levels[a] >= levels_)
          throw Error(ErrorCode::invalid_argument, "price level out of range");
        keys[a] += obs.price_levels[a];
      }
    }
    return keys;
  }

  PolicySpec spec_;
  std::size_t levels_;
  QTable table_;
  std::optional<Pending> pending_;
};

class LowestPriceAgent final : public Agent {
 public:
  explicit LowestPriceAgent(PolicySpec spec) : spec_(std::move(spec)) {}
  std::string name() const override { return spec_.name(); }
  ProviderIndex choose(const Observation& obs, Rng& rng) override {
    return lowest_price_select(obs.context(), rng);
  }
  void learn(const Observation&, const Outcome&) override {}
  nlohmann::json state() const override { return {{"policy", spec_.to_json()}}; }

 private:
  PolicySpec spec_;
};

class RandomAgent final : public Agent {
 public:
  RandomAgent(PolicySpec spec, std::size_t providers) : spec_(std::move(spec)), k_(providers) {}
  std::string name() const override { return spec_.name(); }
  ProviderIndex choose(const Observation&, Rng& rng) override { return random_select(k_, rng); }
  void learn(const Observation&, const Outcome&) override {}
  nlohmann::json state() const override { return {{"policy", spec_.to_json()}}; }

 private:
  PolicySpec spec_;
  std::size_t k_;
};

}  // namespace

std::string_view to_string(PolicyKind kind) noexcept {
  for (const auto& k : kKinds)
    if (k.kind == kind) return k.id;
  return "unknown";
}

std::string_view display_name(PolicyKind kind) noexcept {
  for (const auto& k : kKinds)
    if (k.kind == kind) return k.display;
  return "Unknown";
}

PolicyKind policy_kind_from_string(std::string_view name) {
  for (const auto& k : kKinds)
    if (k.id == name || k.display == name) return k.kind;
  throw Error(ErrorCode::invalid_argument, "unknown policy '" + std::string(name) + "'");
}

PolicySpec PolicySpec::of(PolicyKind kind) {
  PolicySpec spec;
  spec.kind = kind;
  // History is the plain bandit: no window averaging
  if (kind != PolicyKind::expected_utility) spec.estimator = EstimatorMode::full_mean();
  return spec;
}

void PolicySpec::validate() const {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::invalid_argument, name() + ": " + what);
  };
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) fail("epsilon must lie in [0, 1]");
  estimator.validate();
  if (!(c >= 0.0)) fail("c must be non-negative");
  if (!(alpha >= 0.0 && alpha <= 1.0)) fail("alpha must lie in [0, 1]");
  if (!(gamma >= 0.0 && gamma < 1.0)) fail("gamma must lie in [0, 1)");
  if (!(delta > 0.0)) fail("delta must be positive");
  if (!(beta > 0.0)) fail("beta must be positive");
  if (baseline == BaselineKind::exponential && !(baseline_smoothing > 0.0 && baseline_smoothing <= 1.0))
    fail("baseline smoothing must lie in (0, 1]");
}

nlohmann::json PolicySpec::to_json() const {
  return {{"kind", to_string(kind)},
          {"label", name()},
          {"epsilon", epsilon},
          {"estimator", estimator.label()},
          {"c", c},
          {"alpha", alpha},
          {"gamma", gamma},
          {"delta", delta},
          {"beta", beta},
          {"baseline", baseline == BaselineKind::arithmetic ? "arithmetic" : "exponential"},
          {"baseline_smoothing", baseline_smoothing},
          {"state_key", state_key == QStateKey::app ? "app" : "app_price"}};
}

PolicySpec PolicySpec::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw Error(ErrorCode::config, "policy entry needs a 'kind'");
  PolicySpec spec = of(policy_kind_from_string(j.at("kind").get<std::string>()));
  for (const auto& [key, value] : j.items()) {
    if (key == "kind") continue;
    if (key == "label") spec.label = value.get<std::string>();
    else if (key == "epsilon") spec.epsilon = value.get<double>();
    else if (key == "estimator") spec.estimator = EstimatorMode::parse(value.get<std::string>());
    else if (key == "c") spec.c = value.get<double>();
    else if (key == "alpha") spec.alpha = value.get<double>();
    else if (key == "gamma") spec.gamma = value.get<double>();
    else if (key == "delta") spec.delta = value.get<double>();
    else if (key == "beta") spec.beta = value.get<double>();
    else if (key == "baseline_smoothing") spec.baseline_smoothing = value.get<double>();
    else if (key == "baseline") {
      const auto s = value.get<std::string>();
      if (s == "arithmetic") spec.baseline = BaselineKind::arithmetic;
      else if (s == "exponential") spec.baseline = BaselineKind::exponential;
      else throw Error(ErrorCode::config, "baseline must be 'arithmetic' or 'exponential'");
    } else if (key == "state_key") {
      const auto s = value.get<std::string>();
      if (s == "app") spec.state_key = QStateKey::app;
      else if (s == "app_price") spec.state_key = QStateKey::app_price;
      else throw Error(ErrorCode::config, "state_key must be 'app' or 'app_price'");
    } else {
      throw Error(ErrorCode::config, "unknown policy key '" + key + "'");
    }
  }
  spec.validate();
  return spec;
}

std::unique_ptr<Agent> make_agent(const PolicySpec& spec, std::span<const AppProfile> apps,
                                  std::size_t providers, std::size_t price_levels) {
  spec.validate();
  if (providers == 0) throw Error(ErrorCode::invalid_argument, "agent needs providers");
  if (apps.empty()) throw Error(ErrorCode::invalid_argument, "agent needs an app catalogue");
  switch (spec.kind) {
    case PolicyKind::expected_utility:
      return std::make_unique<ExpectedUtilityAgent>(
          spec, std::vector<AppProfile>(apps.begin(), apps.end()), providers);
    case PolicyKind::history: return std::make_unique<HistoryAgent>(spec, providers);
    case PolicyKind::rl:
    case PolicyKind::q_sinr:
      return std::make_unique<QAgent>(spec, apps.size(), providers, price_levels);
    case PolicyKind::ucb: return std::make_unique<UcbAgent>(spec, apps.size(), providers);
    case PolicyKind::gradient: return std::make_unique<GradientAgent>(spec, providers);
    case PolicyKind::lowest_price: return std::make_unique<LowestPriceAgent>(spec);
    case PolicyKind::random: return std::make_unique<RandomAgent>(spec, providers);
  }
  throw Error(ErrorCode::invalid_argument, "unhandled policy kind");
}

}  // namespace bandsim
