#include <algorithm>
#include <map>

#include "engel/errors.hpp"
#include "engel/quotient.hpp"

namespace engel::quotient {

std::vector<LieElement> engel_instances(unsigned n, const MultiDegree& component,
                                        const freelie::FreeLieAlgebra& free,
                                        bool allow_small_characteristic) {
  if (n < 1) throw ConfigError("Engel degree must be at least 1");
  const std::uint32_t p = free.field().p();
  if (n >= 2 && n >= p && !allow_small_characteristic)
    throw PolarizationError(std::to_string(n) + "-Engel instances over F_" + std::to_string(p) +
                            " do not span the verbal ideal");
  const std::vector<MultiDegree> degrees = free.multidegrees();
  std::vector<MultiDegree> candidates;
  for (const MultiDegree& d : degrees)
    if (d.total() < component.total() && d.fits_in(component)) candidates.push_back(d);

  std::vector<LieElement> out;
  std::vector<std::size_t> slot(n);
  std::vector<std::uint32_t> us(n);

  auto emit = [&](std::span<const std::uint32_t> xs) {
    std::vector<std::uint32_t> arrangement = us;
    std::sort(arrangement.begin(), arrangement.end());
    std::vector<std::vector<std::uint32_t>> arrangements;
    do {
      arrangements.push_back(arrangement);
    } while (std::next_permutation(arrangement.begin(), arrangement.end()));
    for (std::uint32_t x : xs) {
      LieElement sum = free.zero();
      for (const auto& arr : arrangements) {
        std::vector<LieElement> args{free.basis_element(x)};
        for (std::uint32_t u : arr) args.push_back(free.basis_element(u));
        sum = lie_add(sum, free.left_normed(args), free.field());
      }
      if (!sum.is_zero()) out.push_back(std::move(sum));
    }
  };
  auto fill = [&](auto&& self, std::size_t k, std::span<const std::uint32_t> xs) -> void {
    if (k == n) {
      emit(xs);
      return;
    }
    auto words = free.component(candidates[slot[k]]);
    for (std::uint32_t u : words) {
      if (k > 0 && slot[k] == slot[k - 1] && u < us[k - 1]) continue;
      us[k] = u;
      self(self, k + 1, xs);
    }
  };
  auto choose = [&](auto&& self, std::size_t k, std::size_t from, const MultiDegree& rest) -> void {
    if (k == n) {
      auto xs = free.component(rest);
      if (!xs.empty()) fill(fill, 0, xs);
      return;
    }
    for (std::size_t ci = from; ci < candidates.size(); ++ci) {
      const MultiDegree& d = candidates[ci];
      if (!d.fits_in(rest) || rest.total() - d.total() < n - k) continue;
      slot[k] = ci;
      self(self, k + 1, ci, rest - d);
    }
  };
  choose(choose, 0, 0, component);
  return out;
}

std::vector<std::size_t> hall_route_dims(std::uint32_t p, std::size_t rank, unsigned engel_n,
                                         unsigned class_cap, std::optional<unsigned> multidegree_cap,
                                         bool allow_small_characteristic) {
  freelie::FreeLieAlgebra free(p, rank, class_cap, multidegree_cap);
  const gf::PrimeField& field = free.field();
  std::vector<std::size_t> dims(class_cap, 0);
  std::map<MultiDegree, gf::FpMatrix> relations;
  for (const MultiDegree& alpha : free.multidegrees()) {
    gf::EchelonBasis rel(free.dim(), field);
    if (engel_n > 0 && alpha.total() >= engel_n + 1)
      for (const LieElement& r : engel_instances(engel_n, alpha, free, allow_small_characteristic))
        rel.insert(r.coeffs);
    for (std::size_t g = 0; g < rank; ++g) {
      if (alpha[g] == 0 || alpha.total() < 2) continue;
      auto prev = relations.find(alpha - MultiDegree::unit(rank, g));
      if (prev == relations.end()) continue;
      const LieElement gen = free.generator(g);
      for (const gf::FpVector& row : prev->second.row_data())
        rel.insert(free.bracket({free.id(), row}, gen).coeffs);
    }
    rel.finalize();
    dims[alpha.total() - 1] += free.component(alpha).size() - rel.rank();
    relations.emplace(alpha, rel.to_matrix());
  }
  return dims;
}

}  // namespace engel::quotient
