#pragma once

#include <cstdint>

#include "engel/gf.hpp"

namespace engel {

// A sparse F_p-combination of the basis of one specific algebra. The algebra
// id is a process-unique tag assigned when the algebra is constructed.
struct LieElement {
  std::uint64_t algebra = 0;
  gf::FpVector coeffs;

  bool is_zero() const noexcept { return coeffs.is_zero(); }
  friend bool operator==(const LieElement&, const LieElement&) = default;
};

std::uint64_t next_algebra_id() noexcept;

// Throws ContextError if x was not produced by the algebra with this id.
void require_algebra(const LieElement& x, std::uint64_t algebra);

LieElement lie_add(const LieElement& x, const LieElement& y, const gf::PrimeField& field);
LieElement lie_sub(const LieElement& x, const LieElement& y, const gf::PrimeField& field);
LieElement lie_scale(const LieElement& x, gf::Residue c, const gf::PrimeField& field);

}  // namespace engel
