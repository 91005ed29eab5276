#pragma once

// Shared fixtures for the test binaries: cached tables and seeded draws.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>

#include "engel/quotient.hpp"
#include "engel/random.hpp"

namespace engel::test {

inline const quotient::AlgebraTable& table(std::uint32_t p, std::size_t rank, unsigned n, unsigned cap,
                                           bool allow_small = false,
                                           std::optional<unsigned> mdegcap = std::nullopt) {
  using Key = std::tuple<std::uint32_t, std::size_t, unsigned, unsigned, bool, int>;
  static std::mutex mu;
  static std::map<Key, std::unique_ptr<quotient::AlgebraTable>> cache;
  std::lock_guard lock(mu);
  const Key key{p, rank, n, cap, allow_small, mdegcap ? static_cast<int>(*mdegcap) : -1};
  auto& slot = cache[key];
  if (!slot) {
    quotient::BuildOptions o;
    o.p = p;
    o.rank = rank;
    o.engel_n = n;
    o.class_cap = cap;
    o.allow_small_characteristic = allow_small;
    o.multidegree_cap = mdegcap;
    slot = std::make_unique<quotient::AlgebraTable>(quotient::build_quotient(o));
  }
  return *slot;
}

// Free 3-Engel over F_5 used across modules.
inline const quotient::AlgebraTable& f5_rank2() { return table(5, 2, 3, 8); }
inline const quotient::AlgebraTable& f5_rank3() { return table(5, 3, 3, 6); }
// 4-Engel over F_5 with the override (partial linearizations only).
inline const quotient::AlgebraTable& f5_engel4() { return table(5, 2, 4, 6, true); }

inline LieElement draw(const quotient::AlgebraTable& t, Rng& rng) { return random_element(t, rng); }

inline LieElement add(const quotient::AlgebraTable& t, const LieElement& x, const LieElement& y) {
  return lie_add(x, y, t.field());
}
inline LieElement sub(const quotient::AlgebraTable& t, const LieElement& x, const LieElement& y) {
  return lie_sub(x, y, t.field());
}
inline LieElement scale(const quotient::AlgebraTable& t, const LieElement& x, gf::Residue c) {
  return lie_scale(x, c, t.field());
}

}  // namespace engel::test
