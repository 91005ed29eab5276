#pragma once

#include <cstdint>
#include <random>

#include "engel/quotient.hpp"

namespace engel {

// Seeded generator used everywhere; seeds are always surfaced in reports.
using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 0xE9E1;

// Coefficient-wise uniform element of the table.
LieElement random_element(const quotient::AlgebraTable& table, Rng& rng);

}  // namespace engel
