#pragma once

// Brute-force cross-check: Lie elements as commutator polynomials in the free
// associative algebra, Engel relations imposed by plain row reduction. Shares
// no code with freelie or quotient beyond the F_p vector type.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "engel/gf.hpp"

namespace engel::oracle {

inline constexpr std::size_t kMaxRank = 3;
inline constexpr unsigned kMaxDegree = 6;

// Bracket expression over generators 0..rank-1.
class Expr {
 public:
  static Expr gen(std::size_t g);
  static Expr bracket(const Expr& a, const Expr& b);
  // Left-normed [e1, e2, ..., em].
  static Expr left_normed(std::span<const Expr> es);

  bool is_generator() const noexcept { return !left_; }
  std::size_t generator() const noexcept { return gen_; }
  const Expr& left() const { return *left_; }
  const Expr& right() const { return *right_; }
  unsigned degree() const noexcept { return degree_; }
  std::string to_string() const;

 private:
  std::size_t gen_ = 0;
  unsigned degree_ = 1;
  std::shared_ptr<const Expr> left_, right_;
};

// Words of length `degree` over `rank` letters, indexed in lexicographic
// order: word w_1..w_d has index sum w_i * rank^(d-i).
class AssocWordSpace {
 public:
  AssocWordSpace(std::size_t rank, unsigned degree);
  std::size_t rank() const noexcept { return rank_; }
  unsigned degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return size_; }
  std::size_t index(std::span<const std::size_t> word) const;
  std::vector<std::size_t> word(std::size_t index) const;
  std::string word_string(std::size_t index) const;  // "g1g2g2"

 private:
  std::size_t rank_;
  unsigned degree_;
  std::size_t size_;
};

// uv - vu for homogeneous u (degree du) and v (degree dv).
gf::FpVector commutator(const gf::FpVector& u, unsigned du, const gf::FpVector& v, unsigned dv,
                        std::size_t rank, const gf::PrimeField& field);

// Exact expansion into AssocWordSpace(rank, e.degree()). BudgetError when the
// degree exceeds `cap` or the rank exceeds kMaxRank.
gf::FpVector commutator_expand(const Expr& e, std::size_t rank, std::uint32_t p,
                               unsigned cap = kMaxDegree);

// Per-degree dimensions 1..degree_cap of the free Lie algebra modulo the
// n-Engel relations (partial linearizations), computed inside the free
// associative algebra. engel_n = 0 gives the free Lie algebra.
std::vector<std::size_t> oracle_dims(std::uint32_t p, std::size_t rank, unsigned engel_n,
                                     unsigned degree_cap, bool allow_small_characteristic = false);

}  // namespace engel::oracle
