#include "engel/gf.hpp"

#include <algorithm>

#include "engel/errors.hpp"

namespace engel::gf {

bool is_prime(std::uint32_t p) noexcept {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p) || p >= (1u << 16))
    throw ConfigError("modulus " + std::to_string(p) + " is not a supported prime");
}

Residue PrimeField::inv(Residue a) const {
  if (a % p_ == 0) throw DivisionByZero("inverse of zero modulo " + std::to_string(p_));
  return pow(a, p_ - 2);
}

Residue PrimeField::pow(Residue a, std::uint64_t e) const noexcept {
  Residue result = 1 % p_;
  Residue base = a % p_;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

FpScalar FpScalar::make(std::int64_t value, std::uint32_t p) {
  PrimeField field(p);
  return {field.reduce(value), p};
}

FpScalar fp_inv(FpScalar x) {
  PrimeField field(x.modulus);
  return {field.inv(x.value), x.modulus};
}

// ---------------------------------------------------------------------------

FpVector FpVector::unit(std::size_t dim, std::uint32_t index, Residue value) {
  if (index >= dim) throw DimError("unit vector index out of range");
  FpVector v(dim);
  if (value != 0) v.entries_.push_back({index, value});
  return v;
}

FpVector FpVector::from_entries(std::size_t dim, std::vector<Entry> entries,
                                const PrimeField& field) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.index < b.index; });
  FpVector v(dim);
  v.entries_.reserve(entries.size());
  for (const Entry& e : entries) {
    if (e.index >= dim) throw DimError("vector entry index out of range");
    Residue value = e.value % field.p();
    if (!v.entries_.empty() && v.entries_.back().index == e.index) {
      v.entries_.back().value = field.add(v.entries_.back().value, value);
      if (v.entries_.back().value == 0) v.entries_.pop_back();
    } else if (value != 0) {
      v.entries_.push_back({e.index, value});
    }
  }
  return v;
}

FpVector FpVector::from_sorted(std::size_t dim, std::vector<Entry> entries) {
  FpVector v(dim);
  v.entries_ = std::move(entries);
  return v;
}

Residue FpVector::get(std::uint32_t index) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::uint32_t i) { return e.index < i; });
  return (it != entries_.end() && it->index == index) ? it->value : 0;
}

class VectorOps {
 public:
  static std::vector<Entry>& data(FpVector& v) { return v.entries_; }
};

namespace {

void check_dims(const FpVector& a, const FpVector& b) {
  if (a.dim() != b.dim())
    throw DimError("vector dimensions differ: " + std::to_string(a.dim()) + " vs " +
                   std::to_string(b.dim()));
}

// out = a + c*b by merging sorted entry lists.
std::vector<Entry> merge_axpy(std::span<const Entry> a, Residue c, std::span<const Entry> b,
                              const PrimeField& field) {
  std::vector<Entry> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].index < b[j].index)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].index < a[i].index) {
      Residue v = field.mul(c, b[j].value);
      if (v != 0) out.push_back({b[j].index, v});
      ++j;
    } else {
      Residue v = field.add(a[i].value, field.mul(c, b[j].value));
      if (v != 0) out.push_back({a[i].index, v});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

void axpy(FpVector& y, Residue c, const FpVector& x, const PrimeField& field) {
  check_dims(y, x);
  c %= field.p();
  if (c == 0 || x.is_zero()) return;
  auto& data = VectorOps::data(y);
  data = merge_axpy(data, c, x.entries(), field);
}

FpVector add(const FpVector& a, const FpVector& b, const PrimeField& field) {
  FpVector out = a;
  axpy(out, 1, b, field);
  return out;
}

FpVector sub(const FpVector& a, const FpVector& b, const PrimeField& field) {
  FpVector out = a;
  axpy(out, field.p() - 1, b, field);
  return out;
}

FpVector scale(const FpVector& x, Residue c, const PrimeField& field) {
  FpVector out(x.dim());
  c %= field.p();
  if (c == 0) return out;
  auto& data = VectorOps::data(out);
  data.reserve(x.nnz());
  for (const Entry& e : x.entries()) data.push_back({e.index, field.mul(c, e.value)});
  return out;
}

void Accumulator::add(std::uint32_t index, Residue value, const PrimeField& field) {
  if (value == 0) return;
  if (index >= dim_) throw DimError("accumulator index out of range");
  Residue& slot = dense_[index];
  if (slot == 0) touched_.push_back(index);
  slot = field.add(slot, value);
}

void Accumulator::add(const FpVector& x, Residue c, const PrimeField& field) {
  if (x.dim() != dim_) throw DimError("accumulator dimension mismatch");
  c %= field.p();
  if (c == 0) return;
  for (const Entry& e : x.entries()) add(e.index, field.mul(c, e.value), field);
}

FpVector Accumulator::take() {
  std::sort(touched_.begin(), touched_.end());
  touched_.erase(std::unique(touched_.begin(), touched_.end()), touched_.end());
  std::vector<Entry> entries;
  entries.reserve(touched_.size());
  for (std::uint32_t i : touched_) {
    if (dense_[i] != 0) entries.push_back({i, dense_[i]});
    dense_[i] = 0;
  }
  touched_.clear();
  return FpVector::from_sorted(dim_, std::move(entries));
}

// ---------------------------------------------------------------------------

FpMatrix FpMatrix::identity(std::size_t n) {
  FpMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.add_row(FpVector::unit(n, static_cast<std::uint32_t>(i)));
  return m;
}

void FpMatrix::add_row(FpVector row) {
  if (row.dim() != cols_)
    throw DimError("row of dimension " + std::to_string(row.dim()) + " added to matrix with " +
                   std::to_string(cols_) + " columns");
  rows_.push_back(std::move(row));
}

// ---------------------------------------------------------------------------

EchelonBasis::EchelonBasis(std::size_t cols, const PrimeField& field)
    : cols_(cols), field_(field), row_of_col_(cols, -1) {}

FpVector EchelonBasis::reduce(FpVector v) const {
  if (v.dim() != cols_) throw DimError("vector dimension does not match echelon basis");
  auto& data = VectorOps::data(v);
  std::size_t i = 0;
  while (i < data.size()) {
    std::int64_t r = row_of_col_[data[i].index];
    if (r < 0) {
      ++i;
      continue;
    }
    // Pivot rows have no entries left of their pivot, so entries before i
    // are untouched by the subtraction.
    Residue c = field_.neg(data[i].value);
    data = merge_axpy(data, c, rows_[static_cast<std::size_t>(r)].entries(), field_);
  }
  return v;
}

bool EchelonBasis::insert(FpVector v) {
  v = reduce(std::move(v));
  if (v.is_zero()) return false;
  auto& data = VectorOps::data(v);
  Residue lead_inv = field_.inv(data.front().value);
  if (lead_inv != 1)
    for (Entry& e : data) e.value = field_.mul(e.value, lead_inv);
  std::uint32_t col = data.front().index;
  row_of_col_[col] = static_cast<std::int64_t>(rows_.size());
  rows_.push_back(std::move(v));
  pivot_cols_.insert(std::upper_bound(pivot_cols_.begin(), pivot_cols_.end(), col), col);
  if (rows_.size() > 1) reduced_ = false;
  return true;
}

void EchelonBasis::finalize() {
  if (reduced_) return;
  // Highest pivots first: each processed row is already fully reduced, so one
  // left-to-right pass clears every pivot column of the current row.
  for (auto it = pivot_cols_.rbegin(); it != pivot_cols_.rend(); ++it) {
    auto& data = VectorOps::data(rows_[static_cast<std::size_t>(row_of_col_[*it])]);
    std::size_t i = 1;
    while (i < data.size()) {
      std::int64_t r = row_of_col_[data[i].index];
      if (r < 0) {
        ++i;
        continue;
      }
      Residue c = field_.neg(data[i].value);
      data = merge_axpy(data, c, rows_[static_cast<std::size_t>(r)].entries(), field_);
    }
  }
  reduced_ = true;
}

std::vector<std::uint32_t> EchelonBasis::pivots() const { return pivot_cols_; }

const FpVector& EchelonBasis::pivot_row(std::uint32_t col) const {
  std::int64_t r = row_of_col_.at(col);
  if (r < 0) throw DimError("column " + std::to_string(col) + " is not a pivot");
  return rows_[static_cast<std::size_t>(r)];
}

FpMatrix EchelonBasis::to_matrix() const {
  FpMatrix m(cols_);
  for (std::uint32_t c : pivot_cols_) m.add_row(pivot_row(c));
  return m;
}

RrefResult rref(const FpMatrix& m, const PrimeField& field) {
  EchelonBasis basis(m.cols(), field);
  for (const FpVector& row : m.row_data()) basis.insert(row);
  basis.finalize();
  return {basis.rank(), basis.pivots(), basis.to_matrix()};
}

bool in_rowspace(const FpMatrix& m, const FpVector& v, const PrimeField& field) {
  if (v.dim() != m.cols()) throw DimError("vector dimension does not match matrix columns");
  if (v.is_zero()) return true;
  EchelonBasis basis(m.cols(), field);
  for (const FpVector& row : m.row_data()) basis.insert(row);
  return basis.contains(v);
}

}  // namespace engel::gf
