#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "bandsim/agents.hpp"
#include "bandsim/error.hpp"
#include "bandsim/estimators.hpp"
#include "bandsim/gradient.hpp"
#include "bandsim/qlearning.hpp"
#include "bandsim/selection.hpp"
#include "oracles.hpp"

using namespace bandsim;

TEST(Estimator, ModesAndLabels) {
  EXPECT_EQ(EstimatorMode::parse("unlimited"), EstimatorMode::full_mean());
  EXPECT_EQ(EstimatorMode::parse("window:3"), EstimatorMode::last(3));
  EXPECT_EQ(EstimatorMode::parse("2"), EstimatorMode::last(2));
  EXPECT_EQ(EstimatorMode::parse("exp:0.25").smoothing, 0.25);
  EXPECT_EQ(EstimatorMode::last(4).label(), "window:4");
  EXPECT_EQ(EstimatorMode::full_mean().label(), "unlimited");
  EXPECT_THROW(EstimatorMode::last(0), Error);
  EXPECT_THROW(EstimatorMode::exponential(1.5), Error);
  EXPECT_THROW(EstimatorMode::parse("median"), Error);
}

TEST(Estimator, WindowKeepsMostRecent) {
  ActionValueTable t(1, 2, EstimatorMode::last(2));
  for (double x : {1.0, 2.0, 9.0}) t.record(0, 0, x);
  EXPECT_DOUBLE_EQ(t.value(0, 0), 5.5);
  EXPECT_EQ(t.count(0, 0), 3u);
  EXPECT_DOUBLE_EQ(t.value(0, 1), 0.0);
}

TEST(Estimator, ExponentialStartsAtFirstSample) {
  ActionValueTable t(1, 1, EstimatorMode::exponential(0.5));
  t.record(0, 0, 4.0);
  EXPECT_DOUBLE_EQ(t.value(0, 0), 4.0);
  t.record(0, 0, 0.0);
  EXPECT_DOUBLE_EQ(t.value(0, 0), 2.0);
}

TEST(Estimator, JsonRoundTrip) {
  ActionValueTable t(2, 3, EstimatorMode::last(2));
  t.record(1, 2, 3.0);
  t.record(1, 2, 5.0);
  t.record(0, 0, -1.0);
  const auto back = ActionValueTable::from_json(t.to_json());
  EXPECT_EQ(back.to_json(), t.to_json());
  EXPECT_DOUBLE_EQ(back.value(1, 2), 4.0);
}

TEST(Ucb, OracleScores) {
  const auto& o = test::oracles()["ucb"];
  ActionValueTable t(1, 2);
  const auto q = test::vec<double>(o["q"]);
  const auto n = test::vec<int>(o["n"]);
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < n[a]; ++i) t.record(0, a, q[a]);
  const auto scores = test::vec<double>(o["scores"]);
  ASSERT_GT(scores[1], scores[0]);
  Rng r(1);
  EXPECT_EQ(ucb_select(t, 0, o["t"].get<std::size_t>(), o["c"].get<double>(), r), 1u);
  // without the bonus the better mean wins
  EXPECT_EQ(ucb_select(t, 0, 11, 0.0, r), 0u);
}

TEST(Ucb, UntriedArmFirstWhenExploring) {
  ActionValueTable t(1, 3);
  t.record(0, 0, 100.0);
  t.record(0, 2, 100.0);
  Rng r(2);
  EXPECT_EQ(ucb_select(t, 0, 2, 0.5, r), 1u);
  EXPECT_THROW(ucb_select(t, 0, 0, 0.5, r), Error);
}

TEST(Selection, LowestPriceAndRandom) {
  Rng r(5);
  EXPECT_EQ(lowest_price_select(Context{0, {3.0, 1.0, 2.0}}, r), 1u);
  std::map<std::size_t, int> counts;
  for (int i = 0; i < 3000; ++i) ++counts[random_select(3, r)];
  for (auto& [k, c] : counts) EXPECT_NEAR(c, 1000, 120) << k;
}

TEST(Selection, ExpectedUtilityUsesCurrentPrice) {
  ActionValueTable thr(1, 2);
  thr.record(0, 0, 4.0);
  thr.record(0, 1, 1.0);
  const std::vector<AppProfile> apps{AppProfile::batch(0)};
  Rng r(1);
  EXPECT_EQ(expected_utility_select(thr, Context{0, {1.0, 1.0}}, apps, r), 0u);
  EXPECT_EQ(expected_utility_select(thr, Context{0, {10.0, 1.0}}, apps, r), 1u);
}

TEST(Selection, EpsilonEdges) {
  Rng a(9), b(9);
  int calls = 0;
  EXPECT_EQ(epsilon_greedy([&] { ++calls; return std::size_t{1}; }, 0.0, 3, a), 1u);
  EXPECT_EQ(calls, 1);
  EXPECT_EQ(a(), b());  // no draw at epsilon 0
  epsilon_greedy([&] { ++calls; return std::size_t{1}; }, 1.0, 3, a);
  EXPECT_EQ(calls, 1);
  EXPECT_THROW(epsilon_greedy([] { return std::size_t{0}; }, 1.5, 3, a), Error);
}

TEST(QLearning, UpdateRule) {
  QTable q(2, 2, 0.2, 0.7);
  q.set(1, 0, 2.0);
  q.update(0, 1, 1.0, 1);
  EXPECT_DOUBLE_EQ(q.value(0, 1), 0.2 * (1.0 + 0.7 * 2.0));
  EXPECT_DOUBLE_EQ(q.max_value(1), 2.0);
  EXPECT_THROW(QTable(1, 1, 1.5, 0.5), Error);
}

TEST(QLearning, FixedPoint) {
  QTable q(1, 1, 0.2, 0.7);
  for (int i = 0; i < 5000; ++i) q.update(0, 0, 1.0, 0);
  EXPECT_NEAR(q.value(0, 0), test::oracles()["q_fixed_point"].get<double>(), 1e-6);
}

TEST(QLearning, SinrWeightedSelection) {
  QTable q(1, 2, 0.2, 0.7);
  q.set(0, 0, 1.0);
  q.set(0, 1, 1.0);
  const std::vector<std::size_t> keys{0, 0};
  const std::vector<double> probs{0.9, 0.1};
  Rng r(4);
  EXPECT_EQ(q_sinr_select(q, keys, probs, r), 0u);
}

TEST(Gradient, SoftmaxValues) {
  const std::vector<double> h{std::log(3.0), 0.0};
  const auto p = softmax(h);
  const auto want = test::vec<double>(test::oracles()["softmax_log3_log1"]);
  EXPECT_NEAR(p[0], want[0], 1e-15);
  EXPECT_NEAR(p[1], want[1], 1e-15);
  const std::vector<double> big{1000.0, 1000.0};
  EXPECT_DOUBLE_EQ(softmax(big)[0], 0.5);
}

TEST(Gradient, SinrSoftmax) {
  const std::vector<double> s{10.0, 10.0};
  EXPECT_DOUBLE_EQ(sinr_softmax(s)[0], 0.5);
  // log preference: weights proportional to sinr^beta
  const std::vector<double> t{1.0, 3.0};
  EXPECT_NEAR(sinr_softmax(t)[1], 0.75, 1e-15);
  EXPECT_NEAR(sinr_softmax(t, 2.0)[1], 0.9, 1e-15);
  EXPECT_THROW(sinr_softmax(std::vector<double>{0.0, 1.0}), Error);
}

TEST(Gradient, PreferenceStep) {
  PreferenceVector pv(2, 0.1);
  pv.update(0, 1.0);
  const auto want = test::vec<double>(test::oracles()["gradient_step"]["h"]);
  EXPECT_NEAR(pv.preferences()[0], want[0], 1e-15);
  EXPECT_NEAR(pv.preferences()[1], want[1], 1e-15);
  EXPECT_DOUBLE_EQ(pv.baseline(), 1.0);
  EXPECT_EQ(pv.updates(), 1u);
}

TEST(Agents, KindsRoundTrip) {
  for (auto k : {PolicyKind::expected_utility, PolicyKind::history, PolicyKind::rl, PolicyKind::ucb,
                 PolicyKind::gradient, PolicyKind::q_sinr, PolicyKind::lowest_price,
                 PolicyKind::random}) {
    EXPECT_EQ(policy_kind_from_string(to_string(k)), k);
    EXPECT_EQ(policy_kind_from_string(display_name(k)), k);
    const auto spec = PolicySpec::of(k);
    EXPECT_EQ(PolicySpec::from_json(spec.to_json()).to_json(), spec.to_json());
    const std::vector<AppProfile> apps{AppProfile::interactive(0, 12.0), AppProfile::batch(1)};
    auto agent = make_agent(spec, apps, 2);
    EXPECT_EQ(agent->name(), display_name(k));
    Observation obs{0, 1, {1.0, 9.0}, {3.0, 5.0}, {}, {0, 1}};
    Rng r(1);
    for (std::size_t s = 0; s < 20; ++s) {
      obs.step = s;
      agent->observe(obs);
      const auto a = agent->choose(obs, r);
      ASSERT_LT(a, 2u);
      agent->learn(obs, Outcome{a, 5.0, obs.prices[a], 5.0 / obs.prices[a]});
    }
    EXPECT_TRUE(agent->state().is_object());
  }
}

TEST(Agents, SpecRejectsUnknownKey) {
  auto j = PolicySpec::of(PolicyKind::ucb).to_json();
  j["colour"] = "red";
  EXPECT_THROW(PolicySpec::from_json(j), Error);
}

TEST(Agents, ExpectedUtilityLearnsThroughput) {
  const std::vector<AppProfile> apps{AppProfile::batch(0)};
  auto eu = make_agent(PolicySpec::of(PolicyKind::expected_utility), apps, 2);
  Observation obs{0, 0, {1.0, 1.0}, {}, {}, {}};
  eu->learn(obs, Outcome{0, 8.0, 1.0, 8.0});
  eu->learn(obs, Outcome{1, 2.0, 1.0, 2.0});
  Rng r(1);
  EXPECT_EQ(eu->choose(obs, r), 0u);
  obs.prices = {10.0, 1.0};
  EXPECT_EQ(eu->choose(obs, r), 1u);
}

TEST(Agents, RlUpdateWaitsForNextObservation) {
  const std::vector<AppProfile> apps{AppProfile::batch(0)};
  auto spec = PolicySpec::of(PolicyKind::rl);
  spec.state_key = QStateKey::app;
  auto rl = make_agent(spec, apps, 2);
  Observation obs{0, 0, {1.0, 1.0}, {}, {}, {}};
  rl->learn(obs, Outcome{1, 1.0, 1.0, 1.0});
  EXPECT_TRUE(rl->state().contains("pending"));
  rl->observe(obs);
  EXPECT_FALSE(rl->state().contains("pending"));
  Rng r(1);
  EXPECT_EQ(rl->choose(obs, r), 1u);
}
