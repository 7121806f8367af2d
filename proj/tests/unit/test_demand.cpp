#include <gtest/gtest.h>

#include "bandsim/demand.hpp"
#include "bandsim/error.hpp"
#include "oracles.hpp"

using namespace bandsim;

TEST(Stationary, Oracles) {
  for (const auto& c : test::oracles()["stationary"]) {
    const auto p = c["p"].get<Matrix>();
    const auto want = test::vec<double>(c["pi"]);
    const auto pi = stationary_distribution(p);
    ASSERT_EQ(pi.size(), want.size());
    for (std::size_t i = 0; i < pi.size(); ++i) EXPECT_NEAR(pi[i], want[i], 1e-10);
  }
}

TEST(Stationary, PeriodicChain) {
  const auto pi = stationary_distribution({{0.0, 1.0}, {1.0, 0.0}});
  EXPECT_NEAR(pi[0], 0.5, 1e-10);
}

TEST(Stochastic, Validation) {
  EXPECT_NO_THROW(validate_row_stochastic({{0.5, 0.5}, {1.0, 0.0}}));
  EXPECT_THROW(validate_row_stochastic({{0.5, 0.6}, {1.0, 0.0}}), Error);
  EXPECT_THROW(validate_row_stochastic({{1.5, -0.5}, {1.0, 0.0}}), Error);
  EXPECT_THROW(validate_row_stochastic({{1.0, 0.0}}), Error);
}

TEST(AppChain, TransitionFrequencies) {
  const std::vector<AppProfile> apps{AppProfile::interactive(0, 12.0), AppProfile::batch(1)};
  const Matrix t{{0.2, 0.8}, {0.6, 0.4}};
  Rng rng(5);
  auto chain = AppChain::stationary_start(apps, t, rng);
  std::size_t visits1 = 0, n = 100000;
  for (std::size_t i = 0; i < n; ++i) visits1 += chain.next_app(rng);
  EXPECT_NEAR(static_cast<double>(visits1) / n, 4.0 / 7.0, 0.01);
}

TEST(AppChain, AbsorbingStays) {
  const std::vector<AppProfile> apps{AppProfile::batch(0), AppProfile::batch(1)};
  AppChain chain(apps, {{1.0, 0.0}, {0.0, 1.0}}, 1);
  Rng rng(1);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(chain.next_app(rng), 1u);
  EXPECT_THROW(AppChain(apps, {{1.0, 0.0}, {0.0, 1.0}}, 2), Error);
}
