#include <gtest/gtest.h>

#include <random>

#include "engel/errors.hpp"
#include "engel/freelie.hpp"

using namespace engel;
using freelie::FreeLieAlgebra;

namespace {

// Witt dimension (1/d) sum_{e|d} mu(e) r^{d/e}, computed independently.
int mobius(unsigned n) {
  int m = 1;
  for (unsigned q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      n /= q;
      if (n % q == 0) return 0;
      m = -m;
    }
  return n > 1 ? -m : m;
}

long witt(unsigned r, unsigned d) {
  long s = 0;
  for (unsigned e = 1; e <= d; ++e)
    if (d % e == 0) {
      long pw = 1;
      for (unsigned i = 0; i < d / e; ++i) pw *= r;
      s += mobius(e) * pw;
    }
  return s / d;
}

LieElement random_elt(const FreeLieAlgebra& L, std::mt19937_64& rng, unsigned max_degree) {
  std::vector<gf::Entry> e;
  for (std::uint32_t i = 0; i < L.dim(); ++i)
    if (L.word(i).degree.total() <= max_degree && rng() % 3 == 0)
      e.push_back({i, static_cast<gf::Residue>(1 + rng() % (L.field().p() - 1))});
  return {L.id(), gf::FpVector::from_sorted(L.dim(), std::move(e))};
}

std::vector<std::size_t> dims_by_degree(const FreeLieAlgebra& L) {
  std::vector<std::size_t> d(L.degree_cap(), 0);
  for (const auto& w : L.basis()) ++d[w.degree.total() - 1];
  return d;
}

}  // namespace

TEST(HallBasis, Examples) {
  EXPECT_EQ(freelie::hall_basis(1, 3).size(), 1u);
  const auto b2 = freelie::hall_basis(2, 2);
  ASSERT_EQ(b2.size(), 3u);
  const FreeLieAlgebra L(5, 2, 2);
  EXPECT_EQ(L.word_string(0), "g1");
  EXPECT_EQ(L.word_string(1), "g2");
  EXPECT_EQ(L.word_string(2), "(g2,g1)");
  EXPECT_EQ(freelie::hall_basis(2, 3).size(), 5u);
}

TEST(HallBasis, WittDimensionsForSmallRanks) {
  for (std::size_t r = 1; r <= 3; ++r) {
    const FreeLieAlgebra L(5, r, 6);
    const auto dims = dims_by_degree(L);
    for (unsigned d = 1; d <= 6; ++d) EXPECT_EQ(static_cast<long>(dims[d - 1]), witt(static_cast<unsigned>(r), d))
        << "rank " << r << " degree " << d;
  }
}

TEST(HallBasis, HallConditionAndDegrees) {
  const auto words = freelie::hall_basis(3, 6);
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto& w = words[i];
    EXPECT_EQ(w.index, i);
    if (w.is_generator()) continue;
    const auto& u = words[w.left];
    const auto& v = words[w.right];
    EXPECT_EQ(w.degree, u.degree + v.degree);
    EXPECT_GT(w.left, w.right);
    if (!u.is_generator()) {
      EXPECT_LE(u.right, w.right);
    }
    if (i > 0) {
      EXPECT_LE(words[i - 1].degree.total(), w.degree.total());
    }
  }
}

TEST(HallBasis, MultidegreeCapFilters) {
  const auto words = freelie::hall_basis(2, 6, 2);
  for (const auto& w : words) EXPECT_LE(w.degree.max_entry(), 2u);
  EXPECT_LT(words.size(), freelie::hall_basis(2, 6).size());
}

TEST(FreeBracket, Examples) {
  const FreeLieAlgebra L(5, 2, 4);
  const LieElement g1 = L.generator(0), g2 = L.generator(1);
  EXPECT_TRUE(L.bracket(g1, g1).is_zero());
  const LieElement w = L.basis_element(2);  // (g2,g1)
  EXPECT_EQ(L.bracket(g1, g2), lie_scale(w, 4, L.field()));
  EXPECT_EQ(L.bracket(g2, g1), w);
  const LieElement w3 = L.bracket(w, g1);
  ASSERT_EQ(w3.coeffs.nnz(), 1u);
  EXPECT_EQ(w3.coeffs.entries()[0].value, 1u);
  EXPECT_EQ(L.word_string(w3.coeffs.entries()[0].index), "((g2,g1),g1)");
}

TEST(FreeBracket, ContextAndArity) {
  const FreeLieAlgebra L(5, 2, 3), M(5, 2, 3);
  EXPECT_THROW(L.bracket(L.generator(0), M.generator(1)), ContextError);
  EXPECT_THROW(L.left_normed({}), ArityError);
}

TEST(LeftNormed, Examples) {
  const FreeLieAlgebra L(5, 2, 4);
  const LieElement x = L.generator(0), y = L.generator(1);
  const LieElement one[] = {x};
  EXPECT_EQ(L.left_normed(one), x);
  const LieElement xxy[] = {x, x, y};
  EXPECT_TRUE(L.left_normed(xxy).is_zero());
  const LieElement xyyy[] = {x, y, y, y};
  EXPECT_FALSE(L.left_normed(xyyy).is_zero());
}

TEST(LeftNormed, TruncatesAboveCap) {
  const FreeLieAlgebra L(5, 2, 3);
  const LieElement x = L.generator(0), y = L.generator(1);
  const LieElement w[] = {x, y, y, y};
  EXPECT_TRUE(L.left_normed(w).is_zero());
}

TEST(FreeBracketProperty, AntisymmetryJacobiGrading) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const FreeLieAlgebra L(p, 3, 6);
    const gf::PrimeField& F = L.field();
    std::mt19937_64 rng(31 + p);
    for (int t = 0; t < 60; ++t) {
      const LieElement x = random_elt(L, rng, 2), y = random_elt(L, rng, 2), z = random_elt(L, rng, 2);
      EXPECT_TRUE(lie_add(L.bracket(x, y), L.bracket(y, x), F).is_zero());
      LieElement j = L.bracket(L.bracket(x, y), z);
      j = lie_add(j, L.bracket(L.bracket(y, z), x), F);
      j = lie_add(j, L.bracket(L.bracket(z, x), y), F);
      EXPECT_TRUE(j.is_zero());
    }
    for (std::uint32_t i = 0; i < L.dim(); ++i)
      for (std::uint32_t k = 0; k < L.dim(); ++k) {
        const MultiDegree target = L.word(i).degree + L.word(k).degree;
        for (const auto& e : L.basis_bracket(i, k).entries()) EXPECT_EQ(L.word(e.index).degree, target);
      }
  }
}

TEST(FreeBracketProperty, Bilinear) {
  const FreeLieAlgebra L(5, 2, 6);
  const gf::PrimeField& F = L.field();
  std::mt19937_64 rng(32);
  for (int t = 0; t < 100; ++t) {
    const LieElement a = random_elt(L, rng, 3), b = random_elt(L, rng, 3), c = random_elt(L, rng, 3);
    const gf::Residue s = static_cast<gf::Residue>(rng() % 5);
    EXPECT_EQ(L.bracket(lie_add(a, lie_scale(b, s, F), F), c),
              lie_add(L.bracket(a, c), lie_scale(L.bracket(b, c), s, F), F));
  }
}
