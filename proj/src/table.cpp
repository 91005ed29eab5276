#include <algorithm>

#include "engel/errors.hpp"
#include "engel/quotient.hpp"

namespace engel::quotient {

AlgebraTable::AlgebraTable(TableHeader header, std::vector<BasisElement> basis, ProductMap products)
    : id_(next_algebra_id()),
      header_(std::move(header)),
      field_(header_.p),
      basis_(std::move(basis)),
      products_(std::move(products)) {
  if (header_.rank < 1 || header_.rank > MultiDegree::kMaxRank)
    throw ConfigError("unsupported rank " + std::to_string(header_.rank));
  for (std::uint32_t i = 0; i < basis_.size(); ++i) {
    const MultiDegree& d = basis_[i].degree;
    if (d.rank() != header_.rank) throw DimError("basis multidegree has the wrong rank");
    if (d.total() == 0) throw DimError("basis element of total degree zero");
    if (i > 0 && d < basis_[i - 1].degree) throw DimError("basis is not sorted by multidegree");
    if (components_.empty() || components_.back().degree != d) {
      component_of_.emplace(d, components_.size());
      components_.push_back({d, i, i + 1});
    } else {
      components_.back().end = i + 1;
    }
  }
  for (const auto& [key, value] : products_) {
    auto i = static_cast<std::uint32_t>(key >> 32);
    auto j = static_cast<std::uint32_t>(key & 0xffffffffu);
    if (!(i < j && j < basis_.size())) throw DimError("structure constant key out of range");
    if (value.dim() != basis_.size()) throw DimError("structure constant has the wrong dimension");
  }
}

const Component* AlgebraTable::component(const MultiDegree& d) const {
  auto it = component_of_.find(d);
  return it == component_of_.end() ? nullptr : &components_[it->second];
}

std::vector<std::size_t> AlgebraTable::dims_by_degree() const {
  std::vector<std::size_t> dims(header_.class_cap, 0);
  for (const BasisElement& e : basis_) {
    unsigned t = e.degree.total();
    if (t > dims.size()) dims.resize(t, 0);
    ++dims[t - 1];
  }
  return dims;
}

unsigned AlgebraTable::top_degree() const noexcept {
  return basis_.empty() ? 0 : basis_.back().degree.total();
}

LieElement AlgebraTable::zero() const { return {id_, gf::FpVector(dim())}; }

LieElement AlgebraTable::basis_element(std::size_t i) const {
  return {id_, gf::FpVector::unit(dim(), static_cast<std::uint32_t>(i))};
}

std::optional<std::uint32_t> AlgebraTable::generator_index(std::size_t g) const {
  if (g >= header_.rank) throw DimError("generator index out of range");
  const Component* c = component(MultiDegree::unit(header_.rank, g));
  if (c == nullptr || c->size() == 0) return std::nullopt;
  return c->begin;
}

LieElement AlgebraTable::generator(std::size_t g) const {
  auto i = generator_index(g);
  return i ? basis_element(*i) : zero();
}

const gf::FpVector* AlgebraTable::stored_product(std::uint32_t i, std::uint32_t j) const {
  auto it = products_.find(pair_key(i, j));
  return it == products_.end() ? nullptr : &it->second;
}

gf::FpVector AlgebraTable::basis_bracket(std::uint32_t i, std::uint32_t j) const {
  if (i >= dim() || j >= dim()) throw DimError("basis index out of range");
  if (i == j) return gf::FpVector(dim());
  if (i < j) {
    const gf::FpVector* v = stored_product(i, j);
    return v ? *v : gf::FpVector(dim());
  }
  const gf::FpVector* v = stored_product(j, i);
  return v ? gf::scale(*v, field_.p() - 1, field_) : gf::FpVector(dim());
}

gf::FpVector AlgebraTable::bracket(const gf::FpVector& x, const gf::FpVector& y) const {
  if (x.dim() != dim() || y.dim() != dim()) throw DimError("element dimension does not match table");
  gf::Accumulator acc(dim());
  for (const gf::Entry& a : x.entries()) {
    for (const gf::Entry& b : y.entries()) {
      if (a.index == b.index) continue;
      gf::Residue c = field_.mul(a.value, b.value);
      if (a.index < b.index) {
        if (const gf::FpVector* v = stored_product(a.index, b.index)) acc.add(*v, c, field_);
      } else {
        if (const gf::FpVector* v = stored_product(b.index, a.index)) acc.add(*v, field_.neg(c), field_);
      }
    }
  }
  return acc.take();
}

LieElement AlgebraTable::bracket(const LieElement& x, const LieElement& y) const {
  require_algebra(x, id_);
  require_algebra(y, id_);
  return {id_, bracket(x.coeffs, y.coeffs)};
}

LieElement AlgebraTable::left_normed(std::span<const LieElement> args) const {
  if (args.empty()) throw ArityError("left-normed bracket needs at least one argument");
  require_algebra(args.front(), id_);
  LieElement acc = args.front();
  for (std::size_t i = 1; i < args.size(); ++i) acc = bracket(acc, args[i]);
  return acc;
}

LieElement AlgebraTable::element(gf::FpVector coeffs) const {
  if (coeffs.dim() != dim()) throw DimError("element dimension does not match table");
  return {id_, std::move(coeffs)};
}

bool AlgebraTable::same_contents(const AlgebraTable& other) const {
  return header_ == other.header_ && basis_ == other.basis_ && products_ == other.products_;
}

ClassInfo nilpotency_class(const AlgebraTable& a) {
  unsigned c = a.top_degree();
  return {c, c >= a.header().class_cap};
}

}  // namespace engel::quotient
