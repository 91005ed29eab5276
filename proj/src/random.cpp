#include "engel/random.hpp"

namespace engel {

LieElement random_element(const quotient::AlgebraTable& table, Rng& rng) {
  std::uniform_int_distribution<std::uint32_t> coeff(0, table.p() - 1);
  std::vector<gf::Entry> entries;
  for (std::uint32_t i = 0; i < table.dim(); ++i) {
    gf::Residue v = coeff(rng);
    if (v != 0) entries.push_back({i, v});
  }
  return table.element(gf::FpVector::from_sorted(table.dim(), std::move(entries)));
}

}  // namespace engel
