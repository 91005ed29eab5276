#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>

namespace engel {

// Occurrence counts of each generator in a monomial.
class MultiDegree {
 public:
  static constexpr std::size_t kMaxRank = 12;

  MultiDegree() = default;
  explicit MultiDegree(std::size_t rank);
  static MultiDegree unit(std::size_t rank, std::size_t generator);
  static MultiDegree from_counts(std::span<const unsigned> counts);

  std::size_t rank() const noexcept { return rank_; }
  unsigned total() const noexcept;
  unsigned max_entry() const noexcept;
  unsigned operator[](std::size_t i) const noexcept { return counts_[i]; }
  void set(std::size_t i, unsigned value);

  MultiDegree operator+(const MultiDegree& other) const;
  // Componentwise difference; requires other <= *this.
  MultiDegree operator-(const MultiDegree& other) const;
  bool fits_in(const MultiDegree& bound) const noexcept;  // componentwise <=

  std::uint64_t hash() const noexcept;
  std::string to_string() const;  // "1,0,2"

  friend bool operator==(const MultiDegree& a, const MultiDegree& b) noexcept {
    return a.rank_ == b.rank_ && a.counts_ == b.counts_;
  }
  // Basis order: lower total degree first, then lexicographically larger
  // count vectors first (so g1 precedes g2).
  friend std::strong_ordering operator<=>(const MultiDegree& a, const MultiDegree& b) noexcept;

 private:
  std::size_t rank_ = 0;
  std::array<std::uint8_t, kMaxRank> counts_{};
};

struct MultiDegreeHash {
  std::size_t operator()(const MultiDegree& d) const noexcept { return d.hash(); }
};

}  // namespace engel
