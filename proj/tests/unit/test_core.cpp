#include <gtest/gtest.h>

#include <set>

#include "bandsim/core.hpp"
#include "bandsim/error.hpp"
#include "bandsim/random.hpp"
#include "oracles.hpp"

using namespace bandsim;

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
}

TEST(Rng, UniformInUnitInterval) {
  Rng r(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, IndexCoversRange) {
  Rng r(3);
  std::set<std::size_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto k = r.index(7);
    ASSERT_LT(k, 7u);
    seen.insert(k);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_THROW(r.index(0), Error);
}

TEST(Rng, DerivedSeedsDiffer) {
  EXPECT_NE(derive_seed(1, {1}), derive_seed(1, {2}));
  EXPECT_NE(derive_seed(1, {1, 2}), derive_seed(1, {2, 1}));
  EXPECT_NE(derive_seed(1, {5}), derive_seed(2, {5}));
  EXPECT_EQ(derive_seed(9, {3, 4}), derive_seed(9, {3, 4}));
}

TEST(Error, WhatCarriesCode) {
  const Error e(ErrorCode::no_distribution, "empty");
  EXPECT_EQ(e.code(), ErrorCode::no_distribution);
  EXPECT_EQ(std::string(e.what()).rfind("no-distribution", 0), 0u);
}

TEST(Decile, OracleCases) {
  const auto& o = test::oracles()["decile"];
  DecileHistory h(test::vec<double>(o["history"]));
  for (const auto& c : o["cases"]) EXPECT_EQ(decile_rank(h, c[0].get<double>()), c[1].get<int>()) << c[0];
}

TEST(Decile, EmptyHistoryThrows) {
  DecileHistory h;
  try {
    decile_rank(h, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::no_distribution);
  }
}

TEST(Decile, TenthsAreExact) {
  // 3 of 10 at or below gives rank 3, not 4
  DecileHistory h({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  EXPECT_EQ(decile_rank(h, 3.0), 3);
  EXPECT_EQ(decile_rank(h, 3.5), 3);
  h.add(0.5);
  EXPECT_EQ(h.size(), 11u);
  EXPECT_EQ(h.count_at_most(3.0), 4u);
}

TEST(Argmax, SetAndTies) {
  const std::vector<double> v{1.0, 3.0, 2.0, 3.0};
  EXPECT_EQ(argmax_set(v), (std::vector<std::size_t>{1, 3}));
  Rng r(7);
  std::set<std::size_t> seen;
  for (int i = 0; i < 200; ++i) seen.insert(argmax_random_tie(v, r));
  EXPECT_EQ(seen, (std::set<std::size_t>{1, 3}));
}

TEST(Argmax, UniqueMaxConsumesNoDraw) {
  const std::vector<double> v{0.1, 5.0, 2.0};
  Rng a(11), b(11);
  EXPECT_EQ(argmax_random_tie(v, a), 1u);
  EXPECT_EQ(a(), b());
}

TEST(AppProfile, Validation) {
  EXPECT_NO_THROW(AppProfile::interactive(0, 12.0).validate());
  EXPECT_NO_THROW(AppProfile::batch(1).validate());
  AppProfile bad = AppProfile::interactive(0, 12.0);
  bad.threshold_mbps.reset();
  EXPECT_THROW(bad.validate(), Error);
  EXPECT_EQ(utility_kind_from_string("interactive"), UtilityKind::interactive);
  EXPECT_THROW(utility_kind_from_string("video"), Error);
}
