#pragma once

// Free Lie algebra on `rank` generators, truncated above a total degree, in a
// Hall basis.
//
// Hall order: words are compared by their position in the basis, which lists
// words by total degree and, within a degree, by (left factor, right factor).
// A composite word [u,v] belongs to the Hall set iff u > v and, when
// u = [u',u''], also u'' <= v. Generators come first as g1 < g2 < ...

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "engel/gf.hpp"
#include "engel/lie_element.hpp"
#include "engel/multidegree.hpp"

namespace engel::freelie {

inline constexpr std::int32_t kNoFactor = -1;

struct HallWord {
  std::int32_t left = kNoFactor;   // basis index of u in [u,v], or kNoFactor
  std::int32_t right = kNoFactor;  // basis index of v
  std::uint32_t generator = 0;     // meaningful for generators only
  MultiDegree degree;
  std::uint32_t index = 0;

  bool is_generator() const noexcept { return left == kNoFactor; }
};

// All Hall words of total degree <= degree_cap whose entries are all
// <= multidegree_cap (when given), in basis order.
std::vector<HallWord> hall_basis(std::size_t rank, unsigned degree_cap,
                                 std::optional<unsigned> multidegree_cap = std::nullopt);

class FreeLieAlgebra {
 public:
  FreeLieAlgebra(std::uint32_t p, std::size_t rank, unsigned degree_cap,
                 std::optional<unsigned> multidegree_cap = std::nullopt);

  std::uint64_t id() const noexcept { return id_; }
  const gf::PrimeField& field() const noexcept { return field_; }
  std::size_t rank() const noexcept { return rank_; }
  unsigned degree_cap() const noexcept { return degree_cap_; }
  std::optional<unsigned> multidegree_cap() const noexcept { return mdeg_cap_; }
  std::size_t dim() const noexcept { return words_.size(); }
  std::span<const HallWord> basis() const noexcept { return words_; }
  const HallWord& word(std::size_t i) const { return words_.at(i); }

  LieElement zero() const;
  LieElement generator(std::size_t g) const;
  LieElement basis_element(std::size_t i) const;
  // Bracket of two basis words in Hall normal form (truncated above the caps).
  const gf::FpVector& basis_bracket(std::uint32_t i, std::uint32_t j) const;

  LieElement bracket(const LieElement& x, const LieElement& y) const;
  LieElement left_normed(std::span<const LieElement> args) const;

  // Basis indices of the given multidegree (empty if none).
  std::span<const std::uint32_t> component(const MultiDegree& d) const;
  std::vector<MultiDegree> multidegrees() const;

  // "g1", "(g2,g1)", "((g2,g1),g1)", ...
  std::string word_string(std::size_t i) const;

 private:
  gf::FpVector collect(std::uint32_t u, std::uint32_t v);
  static std::uint64_t pair_key(std::uint32_t i, std::uint32_t j) {
    return (static_cast<std::uint64_t>(i) << 32) | j;
  }

  std::uint64_t id_;
  gf::PrimeField field_;
  std::size_t rank_;
  unsigned degree_cap_;
  std::optional<unsigned> mdeg_cap_;
  std::vector<HallWord> words_;
  std::unordered_map<std::uint64_t, std::uint32_t> word_of_pair_;
  std::unordered_map<std::uint64_t, gf::FpVector> products_;
  std::unordered_map<MultiDegree, std::vector<std::uint32_t>, MultiDegreeHash> components_;
  gf::FpVector zero_vector_;
};

}  // namespace engel::freelie
