#pragma once

// The associative algebra of adjoint operators of a finite table.
//
// Operators act on the right: x * ad(a) = [x, a], and a word b c c means
// "apply ad_b, then ad_c twice", so x * op_word({b, c, c}) = [x, b, c, c].
// Matrices use the row-vector convention, row i holding the image of e_i.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "engel/execution.hpp"
#include "engel/gf.hpp"
#include "engel/quotient.hpp"
#include "engel/random.hpp"

namespace engel::envelope {

class Operator {
 public:
  Operator(std::uint64_t algebra, gf::FpMatrix matrix);
  static Operator zero(const quotient::AlgebraTable& a);
  static Operator identity(const quotient::AlgebraTable& a);

  std::uint64_t algebra() const noexcept { return algebra_; }
  std::size_t dim() const noexcept { return matrix_.cols(); }
  const gf::FpMatrix& matrix() const noexcept { return matrix_; }
  bool is_zero() const noexcept;

  // this followed by next: x * (this.then(next)) = (x * this) * next.
  Operator then(const Operator& next, const gf::PrimeField& field) const;
  Operator plus(const Operator& other, const gf::PrimeField& field) const;
  Operator scaled(gf::Residue c, const gf::PrimeField& field) const;
  LieElement apply(const LieElement& x, const gf::PrimeField& field) const;

  friend bool operator==(const Operator&, const Operator&) = default;

 private:
  std::uint64_t algebra_;
  gf::FpMatrix matrix_;
};

Operator ad(const quotient::AlgebraTable& a, const LieElement& x);
Operator op_word(const quotient::AlgebraTable& a, std::span<const LieElement> factors);

enum class Identity {
  higgins_a,        // bc^2 + cbc + c^2b = 0
  higgins_b,        // 3bc^2 - 3cbc + c^2b = 0
  crucial_1,        // bc^2 = c^2b
  crucial_2,        // b^2c^2 = c^2b^2
  crucial_3,        // [b,c]^2 = -b^2c^2
  half_square,      // bc^2 = 2cbc
  squares_commute,  // b^2c^2 = c^2b^2 on basis pairs only
};

std::string identity_name(Identity id);
Identity parse_identity(const std::string& name);  // ConfigError on unknown names
std::span<const Identity> all_identities();

struct IdentitySides {
  Operator lhs;
  Operator rhs;
};
IdentitySides identity_sides(const quotient::AlgebraTable& a, Identity id, const LieElement& b,
                             const LieElement& c);

struct Counterexample {
  std::string origin;  // "basis", "polarized" or "random"
  LieElement b;
  LieElement c;
  Operator lhs;
  Operator rhs;
};

struct IdentityReport {
  Identity id;
  bool holds = true;
  std::size_t pairs_checked = 0;
  std::uint64_t seed = kDefaultSeed;
  std::optional<Counterexample> counterexample;
};

struct CheckOptions {
  std::size_t random_pairs = 200;
  std::uint64_t seed = kDefaultSeed;
  // Refuse identities outside the characteristic they are stated for.
  bool enforce_characteristic = true;
  Execution execution = Execution::parallel;
};

// Checks the operator identity on the verification set: basis pairs, the
// polarized pairs needed for the variables that occur quadratically, and
// seeded random pairs. Reports the first counterexample in that order.
IdentityReport check_identity(const quotient::AlgebraTable& a, Identity id,
                              const CheckOptions& options = {});

// [[I(a), I(a)], I(a)] = 0 for the ideal generated by a.
bool traustason_check(const quotient::AlgebraTable& a, const LieElement& x);

}  // namespace engel::envelope
