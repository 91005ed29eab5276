#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "engel/errors.hpp"
#include "engel/gf.hpp"

using namespace engel;
using namespace engel::gf;

namespace {

FpVector random_vector(std::size_t dim, const PrimeField& F, std::mt19937_64& rng, double density = 0.4) {
  std::vector<Entry> e;
  std::uniform_real_distribution<double> coin(0, 1);
  std::uniform_int_distribution<Residue> val(1, F.p() - 1);
  for (std::uint32_t i = 0; i < dim; ++i)
    if (coin(rng) < density) e.push_back({i, val(rng)});
  return FpVector::from_sorted(dim, std::move(e));
}

FpMatrix random_matrix(std::size_t rows, std::size_t cols, const PrimeField& F, std::mt19937_64& rng) {
  FpMatrix m(cols);
  for (std::size_t r = 0; r < rows; ++r) m.add_row(random_vector(cols, F, rng));
  return m;
}

bool is_rref(const RrefResult& r) {
  const FpMatrix& m = r.reduced;
  if (m.rows() != r.rank || r.pivots.size() != r.rank) return false;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const FpVector& row = m.row(i);
    if (row.is_zero() || row.entries()[0].index != r.pivots[i] || row.entries()[0].value != 1) return false;
    if (i > 0 && r.pivots[i] <= r.pivots[i - 1]) return false;
    for (std::size_t j = 0; j < m.rows(); ++j)
      if (j != i && m.row(j).get(r.pivots[i]) != 0) return false;
  }
  return true;
}

}  // namespace

TEST(Field, InverseExamples) {
  EXPECT_EQ(fp_inv(FpScalar::make(1, 5)).value, 1u);
  EXPECT_EQ(fp_inv(FpScalar::make(2, 5)).value, 3u);
  EXPECT_EQ(fp_inv(FpScalar::make(3, 7)).value, 5u);
  EXPECT_EQ(FpScalar::make(-3, 7).value, 4u);
}

TEST(Field, ZeroHasNoInverse) {
  EXPECT_THROW(fp_inv(FpScalar::make(0, 5)), DivisionByZero);
  EXPECT_THROW(fp_inv(FpScalar::make(10, 5)), DivisionByZero);
  EXPECT_THROW(PrimeField(5).inv(0), DivisionByZero);
}

TEST(Field, RejectsComposites) {
  EXPECT_THROW(PrimeField(1), ConfigError);
  EXPECT_THROW(PrimeField(9), ConfigError);
  EXPECT_THROW(FpScalar::make(1, 91), ConfigError);
  EXPECT_NO_THROW(PrimeField(97));
  EXPECT_FALSE(is_prime(0));
  EXPECT_TRUE(is_prime(2));
}

TEST(FieldProperty, InverseIsAnInvolution) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 97u})
    for (std::uint32_t x = 1; x < p; ++x) {
      const FpScalar s = FpScalar::make(x, p);
      const FpScalar y = fp_inv(s);
      EXPECT_EQ(fp_inv(y), s);
      EXPECT_EQ(PrimeField(p).mul(x, y.value), 1u);
    }
}

TEST(FieldProperty, PowMatchesRepeatedProduct) {
  const PrimeField F(13);
  for (Residue a = 0; a < 13; ++a) {
    Residue acc = 1;
    for (unsigned e = 0; e < 30; ++e) {
      EXPECT_EQ(F.pow(a, e), acc);
      acc = F.mul(acc, a);
    }
  }
}

TEST(Vector, NoStoredZeros) {
  const PrimeField F(5);
  FpVector v = FpVector::from_entries(6, {{1, 2}, {3, 4}, {1, 3}, {5, 5}}, F);
  EXPECT_EQ(v.nnz(), 1u);
  EXPECT_EQ(v.get(3), 4u);
  EXPECT_EQ(v.get(1), 0u);
  EXPECT_THROW(FpVector::from_entries(3, {{3, 1}}, F), DimError);
  EXPECT_THROW(FpVector::unit(3, 3), DimError);
}

TEST(Vector, DimensionMismatch) {
  const PrimeField F(5);
  EXPECT_THROW(add(FpVector(2), FpVector(3), F), DimError);
  FpMatrix m(3);
  EXPECT_THROW(m.add_row(FpVector(2)), DimError);
  EXPECT_THROW(in_rowspace(m, FpVector(4), F), DimError);
}

TEST(VectorProperty, AccumulatorAgreesWithAxpy) {
  std::mt19937_64 rng(11);
  const PrimeField F(7);
  for (int trial = 0; trial < 200; ++trial) {
    Accumulator acc(40);
    FpVector ref(40);
    for (int t = 0; t < 5; ++t) {
      const FpVector x = random_vector(40, F, rng);
      const Residue c = static_cast<Residue>(rng() % 7);
      acc.add(x, c, F);
      axpy(ref, c, x, F);
    }
    const FpVector got = acc.take();
    EXPECT_EQ(got, ref);
    for (const Entry& e : got.entries()) EXPECT_NE(e.value, 0u);
    EXPECT_TRUE(acc.take().is_zero());
  }
}

TEST(VectorProperty, SubIsAddOfNegation) {
  std::mt19937_64 rng(12);
  const PrimeField F(5);
  for (int trial = 0; trial < 200; ++trial) {
    const FpVector a = random_vector(20, F, rng), b = random_vector(20, F, rng);
    EXPECT_EQ(sub(a, b, F), add(a, scale(b, 4, F), F));
    EXPECT_TRUE(sub(a, a, F).is_zero());
  }
}

TEST(Rref, Examples) {
  const PrimeField F(5);
  FpMatrix zero(3);
  for (int i = 0; i < 3; ++i) zero.add_row(FpVector(3));
  EXPECT_EQ(rref(zero, F).rank, 0u);

  const RrefResult id = rref(FpMatrix::identity(4), F);
  EXPECT_EQ(id.rank, 4u);
  EXPECT_EQ(id.pivots, (std::vector<std::uint32_t>{0, 1, 2, 3}));

  FpMatrix m(2);
  m.add_row(FpVector::from_sorted(2, {{0, 1}, {1, 2}}));
  m.add_row(FpVector::from_sorted(2, {{0, 2}, {1, 4}}));
  EXPECT_EQ(rref(m, F).rank, 1u);
}

TEST(RowSpace, Examples) {
  const PrimeField F(5);
  FpMatrix m(2);
  m.add_row(FpVector::unit(2, 0));
  EXPECT_TRUE(in_rowspace(m, FpVector(2), F));
  EXPECT_FALSE(in_rowspace(m, FpVector::unit(2, 1), F));
  EXPECT_TRUE(in_rowspace(FpMatrix::identity(2), FpVector::from_sorted(2, {{0, 3}, {1, 4}}), F));
}

TEST(RrefProperty, ReducedIdempotentAndSpanning) {
  std::mt19937_64 rng(13);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const PrimeField F(p);
    for (int trial = 0; trial < 60; ++trial) {
      const FpMatrix m = random_matrix(1 + rng() % 12, 1 + rng() % 15, F, rng);
      const RrefResult r = rref(m, F);
      EXPECT_TRUE(is_rref(r));
      const RrefResult again = rref(r.reduced, F);
      EXPECT_EQ(again.reduced, r.reduced);
      EXPECT_EQ(again.pivots, r.pivots);
      for (const FpVector& row : m.row_data()) EXPECT_TRUE(in_rowspace(r.reduced, row, F));
      for (const FpVector& row : r.reduced.row_data()) EXPECT_TRUE(in_rowspace(m, row, F));
    }
  }
}

TEST(RrefProperty, EchelonIndependentOfInsertionOrder) {
  std::mt19937_64 rng(14);
  const PrimeField F(5);
  for (int trial = 0; trial < 60; ++trial) {
    const FpMatrix m = random_matrix(10, 12, F, rng);
    std::vector<FpVector> rows(m.row_data().begin(), m.row_data().end());
    EchelonBasis a(12, F), b(12, F);
    for (const FpVector& r : rows) a.insert(r);
    std::shuffle(rows.begin(), rows.end(), rng);
    for (const FpVector& r : rows) b.insert(r);
    a.finalize();
    b.finalize();
    EXPECT_EQ(a.to_matrix(), b.to_matrix());
    EXPECT_EQ(a.rank(), rref(m, F).rank);
    EXPECT_EQ(a.to_matrix(), rref(m, F).reduced);
  }
}

TEST(RrefProperty, ReduceLeavesNoPivotColumns) {
  std::mt19937_64 rng(15);
  const PrimeField F(7);
  for (int trial = 0; trial < 60; ++trial) {
    EchelonBasis e(10, F);
    for (int i = 0; i < 4; ++i) e.insert(random_vector(10, F, rng));
    const FpVector v = random_vector(10, F, rng);
    const FpVector r = e.reduce(v);
    for (std::uint32_t c : e.pivots()) EXPECT_EQ(r.get(c), 0u);
    EXPECT_EQ(e.contains(v), r.is_zero());
  }
}
