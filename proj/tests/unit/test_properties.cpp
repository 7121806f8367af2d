#include <gtest/gtest.h>

#include "properties.hpp"

using namespace bandsim;

TEST(Property, QFixedPoint) {
  const auto c = props::q_fixed_point(1);
  EXPECT_TRUE(c.ok) << c.worst;
}

TEST(Property, SoftmaxNormalizedAndShiftInvariant) {
  const auto c = props::softmax_normalization(2);
  EXPECT_TRUE(c.ok) << c.worst;
  EXPECT_EQ(c.cases, 1000u);
}

TEST(Property, UcbZeroIsGreedy) {
  const auto c = props::ucb_zero_is_greedy(3);
  EXPECT_TRUE(c.ok) << c.worst << " mismatches";
}

TEST(Property, UnpopularRowStochastic) {
  const auto c = props::unpopular_rows(4);
  EXPECT_TRUE(c.ok) << c.worst;
}

TEST(Property, LedgerConservationAndReplay) {
  const auto c = props::ledger_conservation(5);
  EXPECT_TRUE(c.ok) << c.detail;
  EXPECT_EQ(c.cases, 10000u);
}

TEST(Property, EstimatorMatchesBruteForce) {
  const auto c = props::estimator_brute_force(6);
  EXPECT_TRUE(c.ok) << c.worst;
}

TEST(Property, DecileMonotone) {
  const auto c = props::decile_monotone(7);
  EXPECT_TRUE(c.ok) << c.worst << " violations";
}
