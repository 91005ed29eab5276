#include "engel/freelie.hpp"

#include <algorithm>

#include "engel/errors.hpp"

namespace engel::freelie {

namespace {

bool within_caps(const MultiDegree& d, unsigned degree_cap, std::optional<unsigned> mdeg_cap) {
  return d.total() <= degree_cap && (!mdeg_cap || d.max_entry() <= *mdeg_cap);
}

}  // namespace

std::vector<HallWord> hall_basis(std::size_t rank, unsigned degree_cap,
                                 std::optional<unsigned> multidegree_cap) {
  if (rank < 1) throw ConfigError("free Lie algebra needs at least one generator");
  if (degree_cap < 1) throw ConfigError("degree cap must be at least 1");
  std::vector<HallWord> words;
  std::vector<std::vector<std::uint32_t>> by_degree(degree_cap + 1);
  for (std::size_t g = 0; g < rank; ++g) {
    HallWord w;
    w.generator = static_cast<std::uint32_t>(g);
    w.degree = MultiDegree::unit(rank, g);
    if (!within_caps(w.degree, degree_cap, multidegree_cap)) continue;
    w.index = static_cast<std::uint32_t>(words.size());
    by_degree[1].push_back(w.index);
    words.push_back(w);
  }
  for (unsigned d = 2; d <= degree_cap; ++d) {
    std::vector<HallWord> fresh;
    for (unsigned dv = 1; dv < d; ++dv) {
      unsigned du = d - dv;
      for (std::uint32_t u : by_degree[du]) {
        for (std::uint32_t v : by_degree[dv]) {
          if (u <= v) continue;
          const HallWord& wu = words[u];
          if (!wu.is_generator() && static_cast<std::uint32_t>(wu.right) > v) continue;
          HallWord w;
          w.left = static_cast<std::int32_t>(u);
          w.right = static_cast<std::int32_t>(v);
          w.degree = wu.degree + words[v].degree;
          if (!within_caps(w.degree, degree_cap, multidegree_cap)) continue;
          fresh.push_back(w);
        }
      }
    }
    std::sort(fresh.begin(), fresh.end(), [](const HallWord& a, const HallWord& b) {
      return a.left != b.left ? a.left < b.left : a.right < b.right;
    });
    for (HallWord& w : fresh) {
      w.index = static_cast<std::uint32_t>(words.size());
      by_degree[d].push_back(w.index);
      words.push_back(w);
    }
  }
  return words;
}

FreeLieAlgebra::FreeLieAlgebra(std::uint32_t p, std::size_t rank, unsigned degree_cap,
                               std::optional<unsigned> multidegree_cap)
    : id_(next_algebra_id()),
      field_(p),
      rank_(rank),
      degree_cap_(degree_cap),
      mdeg_cap_(multidegree_cap),
      words_(hall_basis(rank, degree_cap, multidegree_cap)),
      zero_vector_(words_.size()) {
  for (const HallWord& w : words_) {
    components_[w.degree].push_back(w.index);
    if (!w.is_generator())
      word_of_pair_.emplace(pair_key(static_cast<std::uint32_t>(w.left),
                                     static_cast<std::uint32_t>(w.right)),
                            w.index);
  }
  // Every product landing inside the caps is collected once; afterwards the
  // table is read-only.
  for (std::uint32_t i = 0; i < words_.size(); ++i)
    for (std::uint32_t j = i + 1; j < words_.size(); ++j)
      if (within_caps(words_[i].degree + words_[j].degree, degree_cap_, mdeg_cap_)) collect(j, i);
}

gf::FpVector FreeLieAlgebra::collect(std::uint32_t u, std::uint32_t v) {
  const std::size_t n = words_.size();
  if (u == v) return gf::FpVector(n);
  if (!within_caps(words_[u].degree + words_[v].degree, degree_cap_, mdeg_cap_))
    return gf::FpVector(n);
  if (u < v) return gf::scale(collect(v, u), field_.p() - 1, field_);
  if (auto it = products_.find(pair_key(u, v)); it != products_.end()) return it->second;

  gf::FpVector result(n);
  const HallWord& wu = words_[u];
  if (wu.is_generator() || static_cast<std::uint32_t>(wu.right) <= v) {
    result = gf::FpVector::unit(n, word_of_pair_.at(pair_key(u, v)));
  } else {
    // [[a,b],v] = [[a,v],b] + [a,[b,v]] with u = [a,b] and b > v.
    auto a = static_cast<std::uint32_t>(wu.left);
    auto b = static_cast<std::uint32_t>(wu.right);
    gf::Accumulator acc(n);
    const gf::FpVector av = collect(a, v);
    for (const gf::Entry& e : av.entries()) acc.add(collect(e.index, b), e.value, field_);
    const gf::FpVector bv = collect(b, v);
    for (const gf::Entry& e : bv.entries()) acc.add(collect(a, e.index), e.value, field_);
    result = acc.take();
  }
  products_.emplace(pair_key(u, v), result);
  return result;
}

const gf::FpVector& FreeLieAlgebra::basis_bracket(std::uint32_t i, std::uint32_t j) const {
  if (i >= dim() || j >= dim()) throw DimError("basis index out of range");
  // Only [u,v] with u > v is stored; callers handle the sign.
  if (auto it = products_.find(pair_key(i, j)); it != products_.end()) return it->second;
  return zero_vector_;
}

LieElement FreeLieAlgebra::zero() const { return {id_, gf::FpVector(dim())}; }

LieElement FreeLieAlgebra::generator(std::size_t g) const {
  for (const HallWord& w : words_)
    if (w.is_generator() && w.generator == g) return basis_element(w.index);
  throw DimError("generator index out of range");
}

LieElement FreeLieAlgebra::basis_element(std::size_t i) const {
  return {id_, gf::FpVector::unit(dim(), static_cast<std::uint32_t>(i))};
}

LieElement FreeLieAlgebra::bracket(const LieElement& x, const LieElement& y) const {
  require_algebra(x, id_);
  require_algebra(y, id_);
  gf::Accumulator acc(dim());
  for (const gf::Entry& a : x.coeffs.entries()) {
    for (const gf::Entry& b : y.coeffs.entries()) {
      if (a.index == b.index) continue;
      gf::Residue c = field_.mul(a.value, b.value);
      if (a.index > b.index) {
        acc.add(basis_bracket(a.index, b.index), c, field_);
      } else {
        acc.add(basis_bracket(b.index, a.index), field_.neg(c), field_);
      }
    }
  }
  return {id_, acc.take()};
}

LieElement FreeLieAlgebra::left_normed(std::span<const LieElement> args) const {
  if (args.empty()) throw ArityError("left-normed bracket needs at least one argument");
  LieElement acc = args.front();
  require_algebra(acc, id_);
  for (std::size_t i = 1; i < args.size(); ++i) acc = bracket(acc, args[i]);
  return acc;
}

std::span<const std::uint32_t> FreeLieAlgebra::component(const MultiDegree& d) const {
  if (auto it = components_.find(d); it != components_.end()) return it->second;
  return {};
}

std::vector<MultiDegree> FreeLieAlgebra::multidegrees() const {
  std::vector<MultiDegree> out;
  out.reserve(components_.size());
  for (const auto& [d, _] : components_) out.push_back(d);
  std::sort(out.begin(), out.end());
  return out;
}

std::string FreeLieAlgebra::word_string(std::size_t i) const {
  const HallWord& w = words_.at(i);
  if (w.is_generator()) return "g" + std::to_string(w.generator + 1);
  return "(" + word_string(static_cast<std::size_t>(w.left)) + "," +
         word_string(static_cast<std::size_t>(w.right)) + ")";
}

}  // namespace engel::freelie
