#include <gtest/gtest.h>

#include <random>

#include "engel/errors.hpp"
#include "engel/freelie.hpp"
#include "engel/oracle.hpp"
#include "support.hpp"

using namespace engel;
using namespace engel::oracle;

namespace {

std::size_t word_index(const AssocWordSpace& s, std::initializer_list<std::size_t> w) {
  return s.index(std::vector<std::size_t>(w));
}

Expr hall_expr(const freelie::FreeLieAlgebra& L, std::uint32_t i) {
  const auto& w = L.word(i);
  if (w.is_generator()) return Expr::gen(w.generator);
  return Expr::bracket(hall_expr(L, w.left), hall_expr(L, w.right));
}

LieElement evaluate(const freelie::FreeLieAlgebra& L, const Expr& e) {
  if (e.is_generator()) return L.generator(e.generator());
  return L.bracket(evaluate(L, e.left()), evaluate(L, e.right()));
}

Expr random_expr(std::mt19937_64& rng, std::size_t rank, unsigned degree) {
  if (degree == 1) return Expr::gen(rng() % rank);
  const unsigned left = 1 + static_cast<unsigned>(rng() % (degree - 1));
  return Expr::bracket(random_expr(rng, rank, left), random_expr(rng, rank, degree - left));
}

}  // namespace

TEST(CommutatorExpand, Examples) {
  const AssocWordSpace s2(2, 2), s3(2, 3);
  const gf::FpVector v = commutator_expand(Expr::bracket(Expr::gen(0), Expr::gen(1)), 2, 5);
  EXPECT_EQ(v.nnz(), 2u);
  EXPECT_EQ(v.get(word_index(s2, {0, 1})), 1u);
  EXPECT_EQ(v.get(word_index(s2, {1, 0})), 4u);
  EXPECT_TRUE(commutator_expand(Expr::bracket(Expr::gen(0), Expr::gen(0)), 2, 5).is_zero());

  const Expr e[] = {Expr::gen(0), Expr::gen(1), Expr::gen(1)};
  const gf::FpVector w = commutator_expand(Expr::left_normed(e), 2, 5);
  EXPECT_EQ(w.nnz(), 3u);
  EXPECT_EQ(w.get(word_index(s3, {0, 1, 1})), 1u);
  EXPECT_EQ(w.get(word_index(s3, {1, 0, 1})), 3u);  // -2 mod 5
  EXPECT_EQ(w.get(word_index(s3, {1, 1, 0})), 1u);
  EXPECT_EQ(Expr::left_normed(e).to_string(), "[[g1,g2],g2]");
}

TEST(CommutatorExpand, Guards) {
  std::mt19937_64 rng(71);
  EXPECT_THROW(commutator_expand(random_expr(rng, 2, 7), 2, 5), BudgetError);
  EXPECT_THROW(commutator_expand(random_expr(rng, 2, 4), 2, 5, 3), BudgetError);
  EXPECT_THROW(commutator_expand(Expr::gen(0), 4, 5), BudgetError);
  EXPECT_THROW(Expr::left_normed({}), ArityError);
}

TEST(AssocWordSpace, Lexicographic) {
  const AssocWordSpace s(3, 3);
  EXPECT_EQ(s.size(), 27u);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(s.index(s.word(i)), i);
  EXPECT_EQ(s.word_string(0), "g1g1g1");
  EXPECT_EQ(s.word_string(5), "g1g2g3");
  EXPECT_LT(s.word_string(3), s.word_string(4));
}

TEST(OracleDims, Examples) {
  EXPECT_EQ(oracle_dims(5, 2, 0, 5), (std::vector<std::size_t>{2, 1, 2, 3, 6}));
  EXPECT_EQ(oracle_dims(5, 2, 2, 5), (std::vector<std::size_t>{2, 1, 0, 0, 0}));
  const auto d7 = oracle_dims(7, 2, 3, 6);
  EXPECT_EQ(d7[4], 0u);
  EXPECT_EQ(d7[5], 0u);
  EXPECT_THROW(oracle_dims(3, 2, 3, 5), PolarizationError);
  EXPECT_THROW(oracle_dims(5, 2, 3, 7), BudgetError);
}

class OracleGrid : public ::testing::TestWithParam<std::tuple<std::uint32_t, std::size_t, unsigned>> {};

TEST_P(OracleGrid, MatchesQuotient) {
  const auto [p, rank, n] = GetParam();
  const bool override = n >= p;
  EXPECT_EQ(oracle_dims(p, rank, n, 5, override), test::table(p, rank, n, 5, override).dims_by_degree());
}

INSTANTIATE_TEST_SUITE_P(Grid, OracleGrid,
                         ::testing::Combine(::testing::Values(3u, 5u, 7u), ::testing::Values(std::size_t{2}, std::size_t{3}),
                                            ::testing::Values(0u, 2u, 3u)));

TEST(OracleGridDegreeSix, RankTwoAndThree) {
  EXPECT_EQ(oracle_dims(5, 2, 3, 6), test::table(5, 2, 3, 6).dims_by_degree());
  EXPECT_EQ(oracle_dims(5, 3, 3, 6), test::f5_rank3().dims_by_degree());
  EXPECT_EQ(oracle_dims(7, 3, 3, 6), test::table(7, 3, 3, 6).dims_by_degree());
}

TEST(OracleProperty, FreeBracketEmbedsFaithfully) {
  for (std::size_t rank : {2, 3}) {
    const freelie::FreeLieAlgebra L(5, rank, 6);
    std::mt19937_64 rng(72 + rank);
    for (int t = 0; t < 100; ++t) {
      const unsigned d = 2 + static_cast<unsigned>(rng() % 5);
      const Expr e = random_expr(rng, rank, d);
      const LieElement x = evaluate(L, e);
      gf::FpVector sum(AssocWordSpace(rank, d).size());
      for (const auto& term : x.coeffs.entries())
        gf::axpy(sum, term.value, commutator_expand(hall_expr(L, term.index), rank, 5), L.field());
      ASSERT_EQ(sum, commutator_expand(e, rank, 5)) << e.to_string();
    }
  }
}

TEST(OracleProperty, HallWordsIndependentInEachDegree) {
  const freelie::FreeLieAlgebra L(5, 3, 6);
  for (unsigned d = 1; d <= 6; ++d) {
    gf::EchelonBasis e(AssocWordSpace(3, d).size(), L.field());
    std::size_t count = 0;
    for (std::uint32_t i = 0; i < L.dim(); ++i)
      if (L.word(i).degree.total() == d) {
        EXPECT_TRUE(e.insert(commutator_expand(hall_expr(L, i), 3, 5)));
        ++count;
      }
    EXPECT_EQ(e.rank(), count);
  }
}
