#include <deque>

#include "engel/errors.hpp"
#include "engel/quotient.hpp"

namespace engel::quotient {

Subspace::Subspace(std::uint64_t algebra, gf::EchelonBasis basis)
    : algebra_(algebra), basis_(std::move(basis)) {
  basis_.finalize();
}

bool Subspace::contains(const LieElement& x) const {
  require_algebra(x, algebra_);
  return basis_.contains(x.coeffs);
}

Subspace span_of(const AlgebraTable& a, std::span<const LieElement> elements) {
  gf::EchelonBasis basis(a.dim(), a.field());
  for (const LieElement& x : elements) {
    require_algebra(x, a.id());
    basis.insert(x.coeffs);
  }
  return Subspace(a.id(), std::move(basis));
}

Subspace ideal_generated(const AlgebraTable& a, std::span<const LieElement> gens) {
  gf::EchelonBasis basis(a.dim(), a.field());
  std::deque<gf::FpVector> work;
  auto push = [&](const gf::FpVector& v) {
    if (basis.insert(v)) work.push_back(v);
  };
  for (const LieElement& g : gens) {
    require_algebra(g, a.id());
    push(g.coeffs);
  }
  while (!work.empty()) {
    gf::FpVector v = std::move(work.front());
    work.pop_front();
    for (std::uint32_t j = 0; j < a.dim(); ++j)
      push(a.bracket(v, gf::FpVector::unit(a.dim(), j)));
  }
  return Subspace(a.id(), std::move(basis));
}

bool is_ideal(const AlgebraTable& a, const Subspace& s) {
  if (s.algebra() != a.id()) throw ContextError("subspace belongs to a different algebra");
  for (std::uint32_t c : s.echelon().pivots()) {
    const gf::FpVector& row = s.echelon().pivot_row(c);
    for (std::uint32_t j = 0; j < a.dim(); ++j)
      if (!s.echelon().contains(a.bracket(row, gf::FpVector::unit(a.dim(), j)))) return false;
  }
  return true;
}

AlgebraTable quotient_by_ideal(const AlgebraTable& a, const Subspace& ideal) {
  if (!is_ideal(a, ideal)) throw NotAnIdeal("subspace is not closed under brackets with the algebra");
  const gf::EchelonBasis& e = ideal.echelon();
  const gf::PrimeField& field = a.field();

  std::vector<std::int64_t> local(a.dim(), -1);
  std::vector<BasisElement> basis;
  for (std::uint32_t i = 0; i < a.dim(); ++i) {
    if (e.is_pivot(i)) continue;
    local[i] = static_cast<std::int64_t>(basis.size());
    basis.push_back(a.basis()[i]);
  }
  // e = [parent, g] still holds in the quotient while the parent survives.
  for (BasisElement& b : basis)
    b.parent = b.parent == kNoParent ? kNoParent : static_cast<std::int32_t>(local[b.parent]);
  for (std::uint32_t c : e.pivots())
    for (const gf::Entry& x : e.pivot_row(c).entries())
      if (a.basis()[x.index].degree != a.basis()[c].degree)
        throw ConfigError("quotients are only formed by multihomogeneous ideals");

  const std::size_t dim = basis.size();
  auto project = [&](const gf::FpVector& v) {
    gf::Accumulator acc(dim);
    for (const gf::Entry& x : v.entries()) {
      if (local[x.index] >= 0) {
        acc.add(static_cast<std::uint32_t>(local[x.index]), x.value, field);
      } else {
        for (const gf::Entry& r : e.pivot_row(x.index).entries())
          if (r.index != x.index)
            acc.add(static_cast<std::uint32_t>(local[r.index]), field.neg(field.mul(x.value, r.value)), field);
      }
    }
    return acc.take();
  };

  AlgebraTable::ProductMap products;
  for (const auto& [k, v] : a.products()) {
    auto i = static_cast<std::uint32_t>(k >> 32);
    auto j = static_cast<std::uint32_t>(k & 0xffffffffu);
    if (local[i] < 0 || local[j] < 0) continue;
    gf::FpVector w = project(v);
    if (!w.is_zero())
      products.emplace(AlgebraTable::pair_key(static_cast<std::uint32_t>(local[i]),
                                              static_cast<std::uint32_t>(local[j])),
                       std::move(w));
  }
  return AlgebraTable(a.header(), std::move(basis), std::move(products));
}

}  // namespace engel::quotient
