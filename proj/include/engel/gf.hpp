#pragma once

// Exact arithmetic modulo a small prime and sparse row reduction.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace engel::gf {

using Residue = std::uint32_t;

class PrimeField {
 public:
  // Throws ConfigError unless p is a prime below 2^16.
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const noexcept { return p_; }

  Residue reduce(std::int64_t x) const noexcept {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const noexcept {
    Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept { return (a * b) % p_; }
  Residue inv(Residue a) const;  // DivisionByZero on 0
  Residue pow(Residue a, std::uint64_t e) const noexcept;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint32_t p) noexcept;

struct FpScalar {
  Residue value = 0;
  std::uint32_t modulus = 2;

  // Validates primality of p and reduces value into [0, p).
  static FpScalar make(std::int64_t value, std::uint32_t p);
  friend bool operator==(const FpScalar&, const FpScalar&) = default;
};

FpScalar fp_inv(FpScalar x);

struct Entry {
  std::uint32_t index;
  Residue value;
  friend bool operator==(const Entry&, const Entry&) = default;
};

// Sparse vector: entries sorted by index, no stored zeros.
class FpVector {
 public:
  FpVector() = default;
  explicit FpVector(std::size_t dim) : dim_(dim) {}

  static FpVector unit(std::size_t dim, std::uint32_t index, Residue value = 1);
  // Accepts unsorted entries with repeats; values are summed modulo p.
  static FpVector from_entries(std::size_t dim, std::vector<Entry> entries,
                               const PrimeField& field);
  // Entries must already be sorted, unique and nonzero.
  static FpVector from_sorted(std::size_t dim, std::vector<Entry> entries);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  bool is_zero() const noexcept { return entries_.empty(); }
  std::span<const Entry> entries() const noexcept { return entries_; }
  Residue get(std::uint32_t index) const noexcept;

  friend bool operator==(const FpVector&, const FpVector&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Entry> entries_;

  friend class VectorOps;
};

// this += c * x (dims must agree)
void axpy(FpVector& y, Residue c, const FpVector& x, const PrimeField& field);
FpVector add(const FpVector& a, const FpVector& b, const PrimeField& field);
FpVector sub(const FpVector& a, const FpVector& b, const PrimeField& field);
FpVector scale(const FpVector& x, Residue c, const PrimeField& field);

// Dense scratch accumulator for building sparse vectors from many terms.
class Accumulator {
 public:
  explicit Accumulator(std::size_t dim) : dim_(dim), dense_(dim, 0) {}
  void add(std::uint32_t index, Residue value, const PrimeField& field);
  void add(const FpVector& x, Residue c, const PrimeField& field);
  // Returns the accumulated vector and resets to zero.
  FpVector take();
  std::size_t dim() const noexcept { return dim_; }

 private:
  std::size_t dim_;
  std::vector<Residue> dense_;
  std::vector<std::uint32_t> touched_;
};

class FpMatrix {
 public:
  FpMatrix() = default;
  explicit FpMatrix(std::size_t cols) : cols_(cols) {}
  static FpMatrix identity(std::size_t n);

  void add_row(FpVector row);  // DimError unless row.dim() == cols()
  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  const FpVector& row(std::size_t i) const { return rows_.at(i); }
  std::span<const FpVector> row_data() const noexcept { return rows_; }

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<FpVector> rows_;
};

// Incremental echelon form. Pivot rows are normalized to leading 1; after
// finalize() the stored rows are in reduced row-echelon form, which is unique
// for a given row space, so the result never depends on insertion order.
class EchelonBasis {
 public:
  EchelonBasis(std::size_t cols, const PrimeField& field);

  // Returns true if v was independent of the rows inserted so far.
  bool insert(FpVector v);
  // Remainder of v after eliminating all pivot columns.
  FpVector reduce(FpVector v) const;
  bool contains(const FpVector& v) const { return reduce(v).is_zero(); }

  void finalize();

  std::size_t cols() const noexcept { return cols_; }
  std::size_t rank() const noexcept { return pivot_cols_.size(); }
  const PrimeField& field() const noexcept { return field_; }
  // Pivot columns in increasing order.
  std::vector<std::uint32_t> pivots() const;
  bool is_pivot(std::uint32_t col) const { return row_of_col_[col] >= 0; }
  const FpVector& pivot_row(std::uint32_t col) const;
  FpMatrix to_matrix() const;  // rows ordered by pivot column

 private:
  std::size_t cols_;
  PrimeField field_;
  std::vector<FpVector> rows_;
  std::vector<std::int64_t> row_of_col_;
  std::vector<std::uint32_t> pivot_cols_;
  bool reduced_ = true;
};

struct RrefResult {
  std::size_t rank = 0;
  std::vector<std::uint32_t> pivots;
  FpMatrix reduced;
};

RrefResult rref(const FpMatrix& m, const PrimeField& field);
bool in_rowspace(const FpMatrix& m, const FpVector& v, const PrimeField& field);

}  // namespace engel::gf
