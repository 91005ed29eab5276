#include "engel/multidegree.hpp"

#include <algorithm>

#include "engel/errors.hpp"

namespace engel {

MultiDegree::MultiDegree(std::size_t rank) : rank_(rank) {
  if (rank > kMaxRank) throw ConfigError("rank " + std::to_string(rank) + " exceeds the supported maximum");
}

MultiDegree MultiDegree::unit(std::size_t rank, std::size_t generator) {
  MultiDegree d(rank);
  d.set(generator, 1);
  return d;
}

MultiDegree MultiDegree::from_counts(std::span<const unsigned> counts) {
  MultiDegree d(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) d.set(i, counts[i]);
  return d;
}

unsigned MultiDegree::total() const noexcept {
  unsigned t = 0;
  for (std::size_t i = 0; i < rank_; ++i) t += counts_[i];
  return t;
}

unsigned MultiDegree::max_entry() const noexcept {
  unsigned m = 0;
  for (std::size_t i = 0; i < rank_; ++i) m = std::max<unsigned>(m, counts_[i]);
  return m;
}

void MultiDegree::set(std::size_t i, unsigned value) {
  if (i >= rank_) throw DimError("multidegree index out of range");
  if (value > 255) throw ConfigError("multidegree entry too large");
  counts_[i] = static_cast<std::uint8_t>(value);
}

MultiDegree MultiDegree::operator+(const MultiDegree& other) const {
  if (rank_ != other.rank_) throw DimError("multidegree ranks differ");
  MultiDegree out(rank_);
  for (std::size_t i = 0; i < rank_; ++i) out.set(i, counts_[i] + other.counts_[i]);
  return out;
}

MultiDegree MultiDegree::operator-(const MultiDegree& other) const {
  if (rank_ != other.rank_) throw DimError("multidegree ranks differ");
  if (!other.fits_in(*this)) throw DimError("multidegree difference would be negative");
  MultiDegree out(rank_);
  for (std::size_t i = 0; i < rank_; ++i) out.counts_[i] = static_cast<std::uint8_t>(counts_[i] - other.counts_[i]);
  return out;
}

bool MultiDegree::fits_in(const MultiDegree& bound) const noexcept {
  if (rank_ != bound.rank_) return false;
  for (std::size_t i = 0; i < rank_; ++i)
    if (counts_[i] > bound.counts_[i]) return false;
  return true;
}

std::uint64_t MultiDegree::hash() const noexcept {
  std::uint64_t h = 1469598103934665603ull ^ rank_;
  for (std::size_t i = 0; i < rank_; ++i) {
    h ^= counts_[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::string MultiDegree::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < rank_; ++i) {
    if (i) s += ',';
    s += std::to_string(counts_[i]);
  }
  return s;
}

std::strong_ordering operator<=>(const MultiDegree& a, const MultiDegree& b) noexcept {
  if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
  if (auto c = a.total() <=> b.total(); c != 0) return c;
  for (std::size_t i = 0; i < a.rank_; ++i)
    if (a.counts_[i] != b.counts_[i]) return b.counts_[i] <=> a.counts_[i];
  return std::strong_ordering::equal;
}

}  // namespace engel
