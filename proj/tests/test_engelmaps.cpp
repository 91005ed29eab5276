#include <gtest/gtest.h>

#include <array>

#include "engel/engelmaps.hpp"
#include "engel/errors.hpp"
#include "support.hpp"

using namespace engel;
using namespace engel::maps;
using test::add;
using test::scale;
using test::sub;

namespace {

const quotient::AlgebraTable& L3() { return test::f5_rank3(); }

}  // namespace

TEST(MapB, Examples) {
  const auto& t = L3();
  const ProbeContext ctx(t, t.generator(0));
  Rng rng(41);
  for (int r = 0; r < 50; ++r) {
    const LieElement x1 = random_element(t, rng), x2 = random_element(t, rng), y = random_element(t, rng);
    EXPECT_TRUE(ctx.B(x1, t.zero()).is_zero());
    EXPECT_EQ(ctx.B(add(t, x1, x2), y), add(t, ctx.B(x1, y), ctx.B(x2, y)));
    EXPECT_TRUE(ctx.B(ctx.a(), y).is_zero());
    const LieElement w[] = {ctx.a(), x1, y};
    EXPECT_EQ(ctx.B(x1, y), t.left_normed(w));
  }
  EXPECT_THROW(ctx.B(test::f5_rank2().generator(0), t.zero()), ContextError);
  EXPECT_THROW(ProbeContext(t, test::f5_rank2().generator(0)), ContextError);
}

TEST(MapQ, Examples) {
  const auto& t = L3();
  Rng rng(42);
  for (int r = 0; r < 50; ++r) {
    const ProbeContext ctx(t, random_element(t, rng));
    const LieElement x = random_element(t, rng), y = random_element(t, rng);
    EXPECT_TRUE(ctx.q(t.zero()).is_zero());
    EXPECT_EQ(ctx.q(scale(t, x, t.p() - 1)), ctx.q(x));
    EXPECT_EQ(sub(t, sub(t, ctx.q(add(t, x, y)), ctx.q(x)), ctx.q(y)), add(t, ctx.B(x, y), ctx.B(y, x)));
  }
}

TEST(MapQProperty, QuadraticScaling) {
  const auto& t = L3();
  Rng rng(43);
  const ProbeContext ctx(t, t.generator(1));
  for (int r = 0; r < 50; ++r) {
    const LieElement x = random_element(t, rng);
    for (gf::Residue l = 0; l < 5; ++l) EXPECT_EQ(ctx.q(scale(t, x, l)), scale(t, ctx.q(x), t.field().mul(l, l)));
  }
}

TEST(MapF, Examples) {
  const auto& t = L3();
  Rng rng(44);
  const ProbeContext ctx(t, t.generator(0));
  EXPECT_THROW(ctx.f(std::vector<LieElement>{t.generator(0)}), ArityError);
  for (int r = 0; r < 50; ++r) {
    const LieElement x = random_element(t, rng), y = random_element(t, rng), z = random_element(t, rng);
    EXPECT_TRUE(ctx.f(x, x).is_zero());
    EXPECT_EQ(ctx.f(x, y), ctx.f(y, x));
    const LieElement xs[] = {x, y, z};
    EXPECT_EQ(ctx.f(x, y, z), square_word(ctx, xs));  // (-1)^{3+1} = 1
    const LieElement two[] = {x, y};
    EXPECT_EQ(ctx.f(x, y), scale(t, square_word(ctx, two), t.p() - 1));
  }
}

TEST(MapFProperty, ArityReductionAndTransitivity) {
  const auto& t = L3();
  Rng rng(45);
  for (int r = 0; r < 100; ++r) {
    const ProbeContext ctx(t, random_element(t, rng));
    const LieElement x = random_element(t, rng), y = random_element(t, rng), z = random_element(t, rng);
    const LieElement f3 = ctx.f(x, y, z);
    EXPECT_EQ(f3, ctx.f(t.bracket(x, y), z));
    EXPECT_EQ(ctx.f(t.bracket(x, y), z), ctx.f(x, t.bracket(y, z)));
    const LieElement chain[] = {ctx.f(x, y), z, z};
    EXPECT_TRUE(add(t, t.left_normed(chain), f3).is_zero());
  }
}

TEST(FLaws, AllPassOnThreeEngelCharFive) {
  const auto& t = L3();
  const FLawReport r = check_f_laws(ProbeContext(t, t.generator(0)), 500);
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(r.samples, 500u);
  EXPECT_EQ(r.seed, kDefaultSeed);
  EXPECT_EQ(r.laws.size(), f_law_names().size());
  for (const auto& law : r.laws) {
    EXPECT_TRUE(law.passed) << law.law;
    EXPECT_GT(law.checked, 0u) << law.law;
  }
}

TEST(FLaws, RandomProbeElement) {
  const auto& t = L3();
  Rng rng(46);
  const FLawReport r = check_f_laws(ProbeContext(t, random_element(t, rng)), 200, 7);
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(r.seed, 7u);
}

TEST(FLaws, DegenerateSamplesPass) {
  const auto& t = L3();
  Rng rng(47);
  std::vector<Sample> s;
  for (int r = 0; r < 30; ++r) {
    const LieElement x = random_element(t, rng);
    s.push_back({x, x, random_element(t, rng)});
  }
  EXPECT_TRUE(check_f_laws_on(ProbeContext(t, t.generator(0)), s).all_passed());
}

TEST(FLaws, SomeLawFailsInFourEngel) {
  const auto& t = test::f5_engel4();
  const FLawReport r = check_f_laws(ProbeContext(t, t.generator(0)), 500);
  EXPECT_FALSE(r.all_passed());
  bool reported = false;
  for (const auto& law : r.laws)
    if (!law.passed) reported = reported || law.counterexample.has_value();
  EXPECT_TRUE(reported);
}

TEST(FLaws, SerialMatchesParallelAndSeedDeterminism) {
  const auto& t = L3();
  const ProbeContext ctx(t, t.generator(2));
  const FLawReport a = check_f_laws(ctx, 100, 9, Execution::serial), b = check_f_laws(ctx, 100, 9);
  const auto& t4 = test::f5_engel4();
  const ProbeContext ctx4(t4, t4.generator(0));
  const FLawReport c = check_f_laws(ctx4, 100, 9, Execution::serial), d = check_f_laws(ctx4, 100, 9);
  ASSERT_EQ(a.laws.size(), b.laws.size());
  for (std::size_t i = 0; i < a.laws.size(); ++i) {
    EXPECT_EQ(a.laws[i].passed, b.laws[i].passed);
    EXPECT_EQ(a.laws[i].checked, b.laws[i].checked);
    EXPECT_EQ(c.laws[i].passed, d.laws[i].passed);
    EXPECT_EQ(c.laws[i].counterexample, d.laws[i].counterexample);
  }
}
