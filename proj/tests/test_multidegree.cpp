#include <gtest/gtest.h>

#include <random>

#include "engel/errors.hpp"
#include "engel/multidegree.hpp"

using engel::MultiDegree;

TEST(MultiDegree, Arithmetic) {
  const unsigned a[] = {1, 0, 2}, b[] = {0, 1, 1};
  const MultiDegree x = MultiDegree::from_counts(a), y = MultiDegree::from_counts(b);
  EXPECT_EQ((x + y).to_string(), "1,1,3");
  EXPECT_EQ((x + y - y), x);
  EXPECT_EQ(x.total(), 3u);
  EXPECT_EQ(x.max_entry(), 2u);
  EXPECT_TRUE(y.fits_in(x + y));
  EXPECT_FALSE(x.fits_in(y));
  EXPECT_THROW(y - x, engel::DimError);
  EXPECT_THROW(x + MultiDegree(2), engel::DimError);
}

TEST(MultiDegree, OrderPutsLowDegreeFirstThenG1) {
  EXPECT_LT(MultiDegree::unit(2, 0), MultiDegree::unit(2, 1));
  const unsigned a[] = {0, 2}, b[] = {1, 1};
  EXPECT_LT(MultiDegree::unit(2, 1), MultiDegree::from_counts(a));
  EXPECT_LT(MultiDegree::from_counts(b), MultiDegree::from_counts(a));
}

TEST(MultiDegree, RankGuard) { EXPECT_THROW(MultiDegree(MultiDegree::kMaxRank + 1), engel::ConfigError); }

TEST(MultiDegreeProperty, OrderIsTotalAndCompatibleWithSum) {
  std::mt19937_64 rng(21);
  auto draw = [&] {
    MultiDegree d(3);
    for (std::size_t i = 0; i < 3; ++i) d.set(i, static_cast<unsigned>(rng() % 4));
    return d;
  };
  for (int t = 0; t < 500; ++t) {
    const MultiDegree a = draw(), b = draw(), c = draw();
    const int lt = (a < b) + (b < a) + (a == b);
    EXPECT_EQ(lt, 1);
    if (a < b && b < c) {
      EXPECT_LT(a, c);
    }
    if (a.total() < b.total()) {
      EXPECT_LT(a, b);
    }
    EXPECT_EQ((a + b).total(), a.total() + b.total());
    EXPECT_EQ(a + b, b + a);
    if (a == b) {
      EXPECT_EQ(a.hash(), b.hash());
    }
  }
}
