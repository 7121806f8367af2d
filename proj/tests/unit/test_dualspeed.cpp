#include <gtest/gtest.h>

#include "bandsim/dualspeed.hpp"
#include "bandsim/error.hpp"
#include "oracles.hpp"

using namespace bandsim;

TEST(DualSpeed, UnpopularOracle) {
  const auto& o = test::oracles()["unpopular"];
  const auto u = unpopular_matrix(o["p_pop"].get<Matrix>(), test::vec<double>(o["eps"]));
  const auto want = o["p_unp"].get<Matrix>();
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(u[i][j], want[i][j], 1e-15);
}

TEST(DualSpeed, RejectsBadEpsilon) {
  const Matrix p{{0.5, 0.5}, {0.5, 0.5}};
  EXPECT_THROW(unpopular_matrix(p, std::vector<double>{0.5}), Error);
  EXPECT_THROW(unpopular_matrix(p, std::vector<double>{0.5, 1.2}), Error);
}

TEST(DualSpeed, PopularityGatesSpeed) {
  // tiny epsilon: unpopular providers practically never move
  DualSpeedModel m{{{0.0, 1.0}, {1.0, 0.0}}, {1e-15, 1e-15}, 0, {1.0, 2.0}};
  m.validate();
  Rng rng(3);
  const std::vector<std::size_t> states{0, 0};
  // provider 0 chosen once: popular, flips; provider 1 unchosen: frozen
  const std::vector<std::size_t> counts{1, 0};
  const auto next = step_prices(m, states, counts, rng);
  EXPECT_EQ(next, (std::vector<std::size_t>{1, 0}));
}

TEST(DualSpeed, InfiniteThresholdKeepsAllUnpopular) {
  DualSpeedModel m{{{0.0, 1.0}, {1.0, 0.0}}, {1e-15, 1e-15}, SIZE_MAX, {1.0, 2.0}};
  Rng rng(3);
  const std::vector<std::size_t> states{0, 1};
  const std::vector<std::size_t> counts{100, 100};
  EXPECT_EQ(step_prices(m, states, counts, rng), states);
}

TEST(DualSpeed, ValidateShape) {
  DualSpeedModel m{{{0.5, 0.5}, {0.5, 0.5}}, {0.1}, 0, {1.0, 2.0}};
  EXPECT_THROW(m.validate(), Error);
  m.epsilons = {0.0, 0.2};
  EXPECT_THROW(m.validate(), Error);
  m.epsilons = {0.1, 0.2};
  m.price_labels = {1.0};
  EXPECT_THROW(m.validate(), Error);
}
