// Graded nilpotent-quotient construction.
//
// Components are built wave by wave in total degree. A new component of
// multidegree alpha is presented by one symbol t(u,g) per basis element u of
// multidegree alpha - e_g and generator g, standing for [u,g]. Brackets of
// lower basis elements into alpha are expressed in these symbols by expanding
// the right factor along its definition y = [y',h]:
//
//   [x,[y',h]] = [[x,y'],h] - [[x,h],y'].
//
// The component is the symbol space modulo
//   * antisymmetry of every pair of lower basis elements,
//   * the Jacobi identity for triples (x, y, g) with g a generator, which
//     together with antisymmetry implies it for all triples since every basis
//     element is an iterated bracket of generators,
//   * the Engel instances of multidegree alpha.
// Surviving (non-pivot) symbols become the new basis elements.

#include <algorithm>
#include <exception>
#include <unordered_map>

#include "engel/errors.hpp"
#include "engel/quotient.hpp"

namespace engel::quotient {

namespace {

using Terms = std::vector<gf::Entry>;

// Sorts, merges repeats and drops zeros.
void normalize(Terms& t, const gf::PrimeField& field) {
  std::sort(t.begin(), t.end(), [](const gf::Entry& a, const gf::Entry& b) { return a.index < b.index; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < t.size();) {
    std::uint32_t idx = t[i].index;
    gf::Residue v = 0;
    for (; i < t.size() && t[i].index == idx; ++i) v = field.add(v, t[i].value);
    if (v != 0) t[out++] = {idx, v};
  }
  t.resize(out);
}

std::uint64_t key(std::uint32_t a, std::uint32_t b) { return (static_cast<std::uint64_t>(a) << 32) | b; }

struct PendingComponent {
  MultiDegree degree;
  std::vector<BasisElement> elements;
  // (i, j, [e_i, e_j] over the new local indices), i < j global
  std::vector<std::pair<std::uint64_t, Terms>> products;
};

class Builder {
 public:
  explicit Builder(const BuildOptions& options) : opt_(options), field_(options.p) {}

  AlgebraTable run();

  // Read-only accessors used by component builders during a wave.
  const gf::PrimeField& field() const { return field_; }
  std::size_t rank() const { return opt_.rank; }
  unsigned engel_n() const { return opt_.engel_n; }
  const BasisElement& element(std::uint32_t i) const { return basis_[i]; }
  const Component* component(const MultiDegree& d) const {
    auto it = comp_of_.find(d);
    return it == comp_of_.end() ? nullptr : &comps_[it->second];
  }
  const std::vector<Component>& components() const { return comps_; }
  std::optional<std::uint32_t> generator_index(std::size_t g) const { return gen_index_[g]; }

  // [e_i, e_j] as global terms, appended to out scaled by c.
  void product_into(std::uint32_t i, std::uint32_t j, gf::Residue c, Terms& out) const {
    if (i == j || c == 0) return;
    bool negate = i > j;
    auto it = prod_.find(negate ? key(j, i) : key(i, j));
    if (it == prod_.end()) return;
    gf::Residue s = negate ? field_.neg(c) : c;
    for (const gf::Entry& e : it->second) out.push_back({e.index, field_.mul(s, e.value)});
  }

 private:
  std::vector<MultiDegree> wave(unsigned d) const;
  bool admissible(const MultiDegree& d) const;

  const BuildOptions& opt_;
  gf::PrimeField field_;
  std::vector<BasisElement> basis_;
  std::vector<Component> comps_;
  std::unordered_map<MultiDegree, std::size_t, MultiDegreeHash> comp_of_;
  std::unordered_map<std::uint64_t, Terms> prod_;
  std::vector<std::optional<std::uint32_t>> gen_index_;
};

class ComponentBuilder {
 public:
  ComponentBuilder(const Builder& b, const MultiDegree& alpha) : b_(b), alpha_(alpha), f_(b.field()) {}

  PendingComponent build();

 private:
  std::uint32_t sym(std::uint32_t u, std::uint32_t g) const { return sym_of_.at(key(u, g)); }
  const Terms& br(std::uint32_t x, std::uint32_t y);
  void add_br(std::uint32_t x, std::uint32_t y, gf::Residue c, Terms& out) {
    if (c == 0) return;
    for (const gf::Entry& e : br(x, y)) out.push_back({e.index, f_.mul(c, e.value)});
  }
  void relation(Terms t) {
    normalize(t, f_);
    if (!t.empty()) relations_->insert(gf::FpVector::from_sorted(symbols_.size(), std::move(t)));
  }
  // Lower-degree components that split alpha (or delta) into two halves.
  std::vector<std::pair<const Component*, const Component*>> splits(const MultiDegree& total) const;
  void engel_relations();

  const Builder& b_;
  MultiDegree alpha_;
  const gf::PrimeField& f_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> symbols_;  // (u, g)
  std::unordered_map<std::uint64_t, std::uint32_t> sym_of_;
  std::unordered_map<std::uint64_t, Terms> memo_;
  std::optional<gf::EchelonBasis> relations_;
};

const Terms& ComponentBuilder::br(std::uint32_t x, std::uint32_t y) {
  if (auto it = memo_.find(key(x, y)); it != memo_.end()) return it->second;
  Terms terms;
  const BasisElement& ey = b_.element(y);
  if (ey.parent == kNoParent) {
    terms.push_back({sym(x, ey.generator), 1});
  } else {
    auto yp = static_cast<std::uint32_t>(ey.parent);
    std::uint32_t h = ey.generator;
    Terms lower;
    b_.product_into(x, yp, 1, lower);
    for (const gf::Entry& e : lower) terms.push_back({sym(e.index, h), e.value});
    lower.clear();
    b_.product_into(x, *b_.generator_index(h), 1, lower);
    for (const gf::Entry& e : lower) add_br(e.index, yp, f_.neg(e.value), terms);
    normalize(terms, f_);
  }
  return memo_.emplace(key(x, y), std::move(terms)).first->second;
}

std::vector<std::pair<const Component*, const Component*>> ComponentBuilder::splits(
    const MultiDegree& total) const {
  std::vector<std::pair<const Component*, const Component*>> out;
  for (const Component& c : b_.components()) {
    if (c.degree.total() >= total.total()) break;
    if (!c.degree.fits_in(total)) continue;
    const Component* other = b_.component(total - c.degree);
    if (other == nullptr || other->begin < c.begin) continue;
    out.emplace_back(&c, other);
  }
  return out;
}

PendingComponent ComponentBuilder::build() {
  PendingComponent result;
  result.degree = alpha_;
  for (std::uint32_t g = 0; g < b_.rank(); ++g) {
    if (alpha_[g] == 0) continue;
    const Component* c = b_.component(alpha_ - MultiDegree::unit(b_.rank(), g));
    if (c == nullptr) continue;
    for (std::uint32_t u = c->begin; u < c->end; ++u) {
      sym_of_.emplace(key(u, g), static_cast<std::uint32_t>(symbols_.size()));
      symbols_.emplace_back(u, g);
    }
  }
  if (symbols_.empty()) return result;
  relations_.emplace(symbols_.size(), f_);

  const auto pairs = splits(alpha_);
  for (const auto& [cx, cy] : pairs) {
    for (std::uint32_t x = cx->begin; x < cx->end; ++x) {
      for (std::uint32_t y = (cx == cy ? x : cy->begin); y < cy->end; ++y) {
        Terms t;
        add_br(x, y, 1, t);
        if (x != y) add_br(y, x, 1, t);
        relation(std::move(t));
      }
    }
  }

  for (std::uint32_t g = 0; g < b_.rank(); ++g) {
    if (alpha_[g] == 0) continue;
    auto gi = b_.generator_index(g);
    if (!gi) continue;
    const MultiDegree delta = alpha_ - MultiDegree::unit(b_.rank(), g);
    if (delta.total() < 2) continue;
    for (const auto& [cx, cy] : splits(delta)) {
      for (std::uint32_t x = cx->begin; x < cx->end; ++x) {
        for (std::uint32_t y = (cx == cy ? x + 1 : cy->begin); y < cy->end; ++y) {
          Terms t, lower;
          b_.product_into(x, y, 1, lower);
          for (const gf::Entry& e : lower) t.push_back({sym(e.index, g), e.value});
          lower.clear();
          b_.product_into(y, *gi, 1, lower);
          for (const gf::Entry& e : lower) add_br(e.index, x, e.value, t);
          lower.clear();
          b_.product_into(*gi, x, 1, lower);
          for (const gf::Entry& e : lower) add_br(e.index, y, e.value, t);
          relation(std::move(t));
        }
      }
    }
  }

  if (b_.engel_n() > 0) engel_relations();

  relations_->finalize();
  std::vector<std::int64_t> local(symbols_.size(), -1);
  std::uint32_t next = 0;
  for (std::uint32_t s = 0; s < symbols_.size(); ++s) {
    if (relations_->is_pivot(s)) continue;
    local[s] = next++;
    const auto [u, g] = symbols_[s];
    result.elements.push_back({alpha_, static_cast<std::int32_t>(u), g,
                               "(" + b_.element(u).word + ",g" + std::to_string(g + 1) + ")"});
  }
  if (next == 0) return result;

  auto image = [&](const Terms& t) {
    Terms out;
    for (const gf::Entry& e : t) {
      if (local[e.index] >= 0) {
        out.push_back({static_cast<std::uint32_t>(local[e.index]), e.value});
      } else {
        for (const gf::Entry& r : relations_->pivot_row(e.index).entries()) {
          if (r.index == e.index) continue;
          out.push_back({static_cast<std::uint32_t>(local[r.index]), f_.neg(f_.mul(e.value, r.value))});
        }
      }
    }
    normalize(out, f_);
    return out;
  };
  for (const auto& [cx, cy] : pairs) {
    for (std::uint32_t x = cx->begin; x < cx->end; ++x) {
      for (std::uint32_t y = (cx == cy ? x + 1 : cy->begin); y < cy->end; ++y) {
        Terms t = image(br(x, y));
        if (!t.empty()) result.products.emplace_back(key(x, y), std::move(t));
      }
    }
  }
  return result;
}

void ComponentBuilder::engel_relations() {
  const unsigned n = b_.engel_n();
  std::vector<const Component*> candidates;
  for (const Component& c : b_.components())
    if (c.degree.total() < alpha_.total() && c.degree.fits_in(alpha_)) candidates.push_back(&c);

  std::vector<const Component*> slot_comps(n);
  std::vector<std::uint32_t> us(n);

  // Sum over the distinct arrangements of the multiset us of [x, u_1, ..., u_n].
  auto emit = [&](const Component* xc) {
    std::vector<std::uint32_t> arrangement = us;
    std::sort(arrangement.begin(), arrangement.end());
    std::vector<std::vector<std::uint32_t>> arrangements;
    do {
      arrangements.push_back(arrangement);
    } while (std::next_permutation(arrangement.begin(), arrangement.end()));
    for (std::uint32_t x = xc->begin; x < xc->end; ++x) {
      Terms t;
      for (const auto& arr : arrangements) {
        Terms v{{x, 1}};
        for (std::size_t i = 0; i + 1 < n && !v.empty(); ++i) {
          Terms next;
          for (const gf::Entry& e : v) b_.product_into(e.index, arr[i], e.value, next);
          normalize(next, f_);
          v = std::move(next);
        }
        for (const gf::Entry& e : v) add_br(e.index, arr[n - 1], e.value, t);
      }
      relation(std::move(t));
    }
  };

  // Choose basis elements for slots k.. given the component per slot.
  auto fill = [&](auto&& self, std::size_t k, const Component* xc) -> void {
    if (k == n) {
      emit(xc);
      return;
    }
    std::uint32_t start = slot_comps[k]->begin;
    if (k > 0 && slot_comps[k] == slot_comps[k - 1]) start = us[k - 1];
    for (std::uint32_t u = start; u < slot_comps[k]->end; ++u) {
      us[k] = u;
      self(self, k + 1, xc);
    }
  };

  // Choose non-decreasing components for the n slots; x takes the rest.
  auto choose = [&](auto&& self, std::size_t k, std::size_t from, const MultiDegree& rest) -> void {
    if (k == n) {
      const Component* xc = b_.component(rest);
      if (xc != nullptr) fill(fill, 0, xc);
      return;
    }
    for (std::size_t ci = from; ci < candidates.size(); ++ci) {
      const Component* c = candidates[ci];
      if (!c->degree.fits_in(rest)) continue;
      if (rest.total() - c->degree.total() < n - k) continue;
      slot_comps[k] = c;
      self(self, k + 1, ci, rest - c->degree);
    }
  };
  choose(choose, 0, 0, alpha_);
}

bool Builder::admissible(const MultiDegree& d) const {
  if (d.total() > opt_.class_cap) return false;
  if (opt_.multidegree_cap && d.max_entry() > *opt_.multidegree_cap) return false;
  if (opt_.weight_bound && !d.fits_in(*opt_.weight_bound)) return false;
  return true;
}

std::vector<MultiDegree> Builder::wave(unsigned d) const {
  std::vector<MultiDegree> out;
  MultiDegree cur(opt_.rank);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == opt_.rank) {
      cur.set(i, left);
      if (admissible(cur)) out.push_back(cur);
      return;
    }
    for (unsigned v = 0; v <= left; ++v) {
      cur.set(i, v);
      self(self, i + 1, left - v);
    }
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end());
  return out;
}

AlgebraTable Builder::run() {
  if (opt_.rank < 1) throw ConfigError("rank must be at least 1");
  if (opt_.class_cap < 2) throw ConfigError("class cap must be at least 2");
  if (opt_.weight_bound && opt_.weight_bound->rank() != opt_.rank)
    throw ConfigError("weight bound has the wrong rank");
  if (opt_.engel_n >= 2 && opt_.engel_n >= opt_.p && !opt_.allow_small_characteristic)
    throw PolarizationError(std::to_string(opt_.engel_n) + "-Engel relations over F_" +
                            std::to_string(opt_.p) +
                            " cannot be imposed by polarization; pass the small-characteristic override");

  gen_index_.assign(opt_.rank, std::nullopt);
  for (std::uint32_t g = 0; g < opt_.rank; ++g) {
    MultiDegree d = MultiDegree::unit(opt_.rank, g);
    if (!admissible(d)) continue;
    gen_index_[g] = static_cast<std::uint32_t>(basis_.size());
    comp_of_.emplace(d, comps_.size());
    comps_.push_back({d, static_cast<std::uint32_t>(basis_.size()), static_cast<std::uint32_t>(basis_.size() + 1)});
    basis_.push_back({d, kNoParent, g, "g" + std::to_string(g + 1)});
  }

  for (unsigned d = 2; d <= opt_.class_cap; ++d) {
    const std::vector<MultiDegree> alphas = wave(d);
    std::vector<PendingComponent> pending(alphas.size());
    std::exception_ptr failure;
    const auto n = static_cast<std::ptrdiff_t>(alphas.size());
    if (opt_.execution == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
      for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
          pending[i] = ComponentBuilder(*this, alphas[i]).build();
        } catch (...) {
#pragma omp critical(engel_nq_failure)
          if (!failure) failure = std::current_exception();
        }
      }
    } else {
      for (std::ptrdiff_t i = 0; i < n; ++i) pending[i] = ComponentBuilder(*this, alphas[i]).build();
    }
    if (failure) std::rethrow_exception(failure);

    bool grew = false;
    for (PendingComponent& pc : pending) {
      if (pc.elements.empty()) continue;
      grew = true;
      auto begin = static_cast<std::uint32_t>(basis_.size());
      comp_of_.emplace(pc.degree, comps_.size());
      comps_.push_back({pc.degree, begin, begin + static_cast<std::uint32_t>(pc.elements.size())});
      for (BasisElement& e : pc.elements) basis_.push_back(std::move(e));
      for (auto& [k, terms] : pc.products) {
        for (gf::Entry& e : terms) e.index += begin;
        prod_.emplace(k, std::move(terms));
      }
    }
    if (opt_.max_dim > 0 && basis_.size() > opt_.max_dim) {
      std::string dims;
      for (unsigned t = 1; t <= d; ++t) {
        std::size_t c = 0;
        for (const BasisElement& e : basis_) c += e.degree.total() == t;
        dims += (t > 1 ? "," : "") + std::to_string(c);
      }
      throw BudgetError("dimension " + std::to_string(basis_.size()) + " exceeds budget " +
                        std::to_string(opt_.max_dim) + " at degree " + std::to_string(d) +
                        " (dims so far: " + dims + ")");
    }
    if (!grew) break;
  }

  TableHeader header{opt_.p, opt_.rank, opt_.engel_n, opt_.class_cap, opt_.multidegree_cap, opt_.weight_bound};
  AlgebraTable::ProductMap products;
  products.reserve(prod_.size());
  for (auto& [k, terms] : prod_) products.emplace(k, gf::FpVector::from_sorted(basis_.size(), std::move(terms)));
  return AlgebraTable(std::move(header), std::move(basis_), std::move(products));
}

}  // namespace

AlgebraTable build_quotient(const BuildOptions& options) { return Builder(options).run(); }

}  // namespace engel::quotient
