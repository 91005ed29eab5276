#include "engel/lie_element.hpp"

#include <atomic>
#include <string>

#include "engel/errors.hpp"

namespace engel {

std::uint64_t next_algebra_id() noexcept {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

void require_algebra(const LieElement& x, std::uint64_t algebra) {
  if (x.algebra != algebra)
    throw ContextError("element of algebra #" + std::to_string(x.algebra) +
                       " used with algebra #" + std::to_string(algebra));
}

LieElement lie_add(const LieElement& x, const LieElement& y, const gf::PrimeField& field) {
  require_algebra(y, x.algebra);
  return {x.algebra, gf::add(x.coeffs, y.coeffs, field)};
}

LieElement lie_sub(const LieElement& x, const LieElement& y, const gf::PrimeField& field) {
  require_algebra(y, x.algebra);
  return {x.algebra, gf::sub(x.coeffs, y.coeffs, field)};
}

LieElement lie_scale(const LieElement& x, gf::Residue c, const gf::PrimeField& field) {
  return {x.algebra, gf::scale(x.coeffs, c, field)};
}

}  // namespace engel
