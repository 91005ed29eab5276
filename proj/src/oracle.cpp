#include "engel/oracle.hpp"

#include <algorithm>

#include "engel/errors.hpp"

namespace engel::oracle {

Expr Expr::gen(std::size_t g) {
  Expr e;
  e.gen_ = g;
  return e;
}

Expr Expr::bracket(const Expr& a, const Expr& b) {
  Expr e;
  e.degree_ = a.degree_ + b.degree_;
  e.left_ = std::make_shared<const Expr>(a);
  e.right_ = std::make_shared<const Expr>(b);
  return e;
}

Expr Expr::left_normed(std::span<const Expr> es) {
  if (es.empty()) throw ArityError("empty bracket");
  Expr out = es[0];
  for (std::size_t i = 1; i < es.size(); ++i) out = bracket(out, es[i]);
  return out;
}

std::string Expr::to_string() const {
  if (is_generator()) return "g" + std::to_string(gen_ + 1);
  return "[" + left_->to_string() + "," + right_->to_string() + "]";
}

AssocWordSpace::AssocWordSpace(std::size_t rank, unsigned degree) : rank_(rank), degree_(degree), size_(1) {
  for (unsigned i = 0; i < degree; ++i) size_ *= rank;
}

std::size_t AssocWordSpace::index(std::span<const std::size_t> word) const {
  if (word.size() != degree_) throw DimError("word length mismatch");
  std::size_t i = 0;
  for (std::size_t w : word) {
    if (w >= rank_) throw DimError("letter out of range");
    i = i * rank_ + w;
  }
  return i;
}

std::vector<std::size_t> AssocWordSpace::word(std::size_t index) const {
  std::vector<std::size_t> w(degree_);
  for (unsigned i = degree_; i-- > 0;) {
    w[i] = index % rank_;
    index /= rank_;
  }
  return w;
}

std::string AssocWordSpace::word_string(std::size_t index) const {
  std::string s;
  for (std::size_t w : word(index)) s += "g" + std::to_string(w + 1);
  return s;
}

namespace {

std::size_t ipow(std::size_t r, unsigned d) {
  std::size_t n = 1;
  while (d--) n *= r;
  return n;
}

}  // namespace

gf::FpVector commutator(const gf::FpVector& u, unsigned du, const gf::FpVector& v, unsigned dv,
                        std::size_t rank, const gf::PrimeField& field) {
  const std::size_t su = ipow(rank, du), sv = ipow(rank, dv);
  std::vector<gf::Entry> terms;
  terms.reserve(2 * u.nnz() * v.nnz());
  for (const gf::Entry& a : u.entries())
    for (const gf::Entry& b : v.entries()) {
      const gf::Residue c = field.mul(a.value, b.value);
      terms.push_back({static_cast<std::uint32_t>(a.index * sv + b.index), c});
      terms.push_back({static_cast<std::uint32_t>(b.index * su + a.index), field.neg(c)});
    }
  return gf::FpVector::from_entries(su * sv, std::move(terms), field);
}

namespace {

void guard(std::size_t rank, unsigned degree, unsigned cap) {
  if (rank > kMaxRank) throw BudgetError("oracle supports rank <= 3");
  if (degree > cap || degree > kMaxDegree)
    throw BudgetError("oracle degree " + std::to_string(degree) + " exceeds its cap");
}

gf::FpVector expand(const Expr& e, std::size_t rank, const gf::PrimeField& field) {
  if (e.is_generator()) {
    if (e.generator() >= rank) throw DimError("generator out of range");
    return gf::FpVector::unit(rank, static_cast<std::uint32_t>(e.generator()));
  }
  return commutator(expand(e.left(), rank, field), e.left().degree(), expand(e.right(), rank, field),
                    e.right().degree(), rank, field);
}

std::vector<gf::FpVector> basis_rows(gf::EchelonBasis& e) {
  e.finalize();
  gf::FpMatrix m = e.to_matrix();
  return {m.row_data().begin(), m.row_data().end()};
}

}  // namespace

gf::FpVector commutator_expand(const Expr& e, std::size_t rank, std::uint32_t p, unsigned cap) {
  guard(rank, e.degree(), cap);
  return expand(e, rank, gf::PrimeField(p));
}

std::vector<std::size_t> oracle_dims(std::uint32_t p, std::size_t rank, unsigned engel_n,
                                     unsigned degree_cap, bool allow_small_characteristic) {
  guard(rank, degree_cap, kMaxDegree);
  const gf::PrimeField field(p);
  if (engel_n >= 2 && engel_n >= p && !allow_small_characteristic)
    throw PolarizationError("Engel degree at least the characteristic needs the override");

  // lie[d] spans the degree-d part of the free Lie algebra; rel[d] the
  // relations in that degree.
  std::vector<std::vector<gf::FpVector>> lie(degree_cap + 1), rel(degree_cap + 1);
  std::vector<std::size_t> dims;
  for (unsigned d = 1; d <= degree_cap; ++d) {
    const std::size_t words = ipow(rank, d);
    gf::EchelonBasis L(words, field), R(words, field);
    if (d == 1) {
      for (std::size_t g = 0; g < rank; ++g) L.insert(gf::FpVector::unit(rank, static_cast<std::uint32_t>(g)));
    } else {
      for (const gf::FpVector& v : lie[d - 1])
        for (std::size_t g = 0; g < rank; ++g)
          L.insert(commutator(v, d - 1, gf::FpVector::unit(rank, static_cast<std::uint32_t>(g)), 1, rank, field));
      for (const gf::FpVector& v : rel[d - 1])
        for (std::size_t g = 0; g < rank; ++g)
          R.insert(commutator(v, d - 1, gf::FpVector::unit(rank, static_cast<std::uint32_t>(g)), 1, rank, field));
    }

    if (engel_n >= 1 && d >= engel_n + 1) {
      // Slots: every basis vector of lie[b] for b < d, tagged with its degree.
      struct Slot {
        unsigned degree;
        std::size_t index;
      };
      std::vector<Slot> slots;
      for (unsigned b = 1; b < d; ++b)
        for (std::size_t i = 0; i < lie[b].size(); ++i) slots.push_back({b, i});
      std::vector<std::size_t> pick(engel_n);
      auto emit = [&](unsigned xdeg) {
        std::vector<std::size_t> arr = pick;
        std::sort(arr.begin(), arr.end());
        for (const gf::FpVector& x : lie[xdeg]) {
          gf::FpVector sum(words);
          std::vector<std::size_t> perm = arr;
          do {
            gf::FpVector cur = x;
            unsigned cd = xdeg;
            for (std::size_t s : perm) {
              const Slot& sl = slots[s];
              cur = commutator(cur, cd, lie[sl.degree][sl.index], sl.degree, rank, field);
              cd += sl.degree;
            }
            sum = gf::add(sum, cur, field);
          } while (std::next_permutation(perm.begin(), perm.end()));
          R.insert(std::move(sum));
        }
      };
      auto choose = [&](auto&& self, std::size_t k, std::size_t from, unsigned used) -> void {
        if (k == engel_n) {
          if (used < d) emit(d - used);
          return;
        }
        for (std::size_t s = from; s < slots.size(); ++s) {
          if (used + slots[s].degree + (engel_n - k - 1) >= d) continue;
          pick[k] = s;
          self(self, k + 1, s, used + slots[s].degree);
        }
      };
      choose(choose, 0, 0, 0);
    }
    lie[d] = basis_rows(L);
    rel[d] = basis_rows(R);
    dims.push_back(lie[d].size() - rel[d].size());
  }
  return dims;
}

}  // namespace engel::oracle
