#include "engel/envelope.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <limits>

#include "engel/errors.hpp"

namespace engel::envelope {

using quotient::AlgebraTable;

Operator::Operator(std::uint64_t algebra, gf::FpMatrix matrix)
    : algebra_(algebra), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw DimError("operator matrix must be square");
}

Operator Operator::zero(const AlgebraTable& a) {
  gf::FpMatrix m(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) m.add_row(gf::FpVector(a.dim()));
  return Operator(a.id(), std::move(m));
}

Operator Operator::identity(const AlgebraTable& a) {
  return Operator(a.id(), gf::FpMatrix::identity(a.dim()));
}

bool Operator::is_zero() const noexcept {
  for (const gf::FpVector& r : matrix_.row_data())
    if (!r.is_zero()) return false;
  return true;
}

namespace {

void same_shape(const Operator& x, const Operator& y) {
  if (x.algebra() != y.algebra()) throw ContextError("operators on different algebras");
  if (x.dim() != y.dim()) throw DimError("operator dimensions differ");
}

}  // namespace

Operator Operator::then(const Operator& next, const gf::PrimeField& field) const {
  same_shape(*this, next);
  gf::Accumulator acc(dim());
  gf::FpMatrix out(dim());
  for (const gf::FpVector& r : matrix_.row_data()) {
    for (const gf::Entry& e : r.entries()) acc.add(next.matrix_.row(e.index), e.value, field);
    out.add_row(acc.take());
  }
  return Operator(algebra_, std::move(out));
}

Operator Operator::plus(const Operator& other, const gf::PrimeField& field) const {
  same_shape(*this, other);
  gf::FpMatrix out(dim());
  for (std::size_t i = 0; i < dim(); ++i)
    out.add_row(gf::add(matrix_.row(i), other.matrix_.row(i), field));
  return Operator(algebra_, std::move(out));
}

Operator Operator::scaled(gf::Residue c, const gf::PrimeField& field) const {
  gf::FpMatrix out(dim());
  for (const gf::FpVector& r : matrix_.row_data()) out.add_row(gf::scale(r, c, field));
  return Operator(algebra_, std::move(out));
}

LieElement Operator::apply(const LieElement& x, const gf::PrimeField& field) const {
  require_algebra(x, algebra_);
  gf::Accumulator acc(dim());
  for (const gf::Entry& e : x.coeffs.entries()) acc.add(matrix_.row(e.index), e.value, field);
  return {algebra_, acc.take()};
}

Operator ad(const AlgebraTable& a, const LieElement& x) {
  require_algebra(x, a.id());
  gf::FpMatrix m(a.dim());
  for (std::uint32_t i = 0; i < a.dim(); ++i)
    m.add_row(a.bracket(gf::FpVector::unit(a.dim(), i), x.coeffs));
  return Operator(a.id(), std::move(m));
}

Operator op_word(const AlgebraTable& a, std::span<const LieElement> factors) {
  if (factors.empty()) throw ArityError("operator word needs at least one factor");
  Operator out = ad(a, factors[0]);
  for (std::size_t i = 1; i < factors.size(); ++i) out = out.then(ad(a, factors[i]), a.field());
  return out;
}

namespace {

constexpr std::array<Identity, 7> kAll = {Identity::higgins_a, Identity::higgins_b,
                                          Identity::crucial_1, Identity::crucial_2,
                                          Identity::crucial_3, Identity::half_square,
                                          Identity::squares_commute};

// Degree of each variable in the identity.
std::pair<unsigned, unsigned> variable_degrees(Identity id) {
  switch (id) {
    case Identity::crucial_2:
    case Identity::crucial_3:
    case Identity::squares_commute:
      return {2, 2};
    default:
      return {1, 2};
  }
}

IdentitySides sides_from(const AlgebraTable& a, Identity id, const Operator& B, const Operator& C,
                         const Operator& BC) {
  const gf::PrimeField& F = a.field();
  const std::uint32_t p = a.p();
  auto k = [&](std::int64_t c) { return F.reduce(c); };
  Operator zero = Operator::zero(a);
  Operator CC = C.then(C, F);
  switch (id) {
    case Identity::higgins_a: {
      Operator lhs = B.then(CC, F).plus(C.then(B, F).then(C, F), F).plus(CC.then(B, F), F);
      return {lhs, zero};
    }
    case Identity::higgins_b: {
      Operator lhs = B.then(CC, F)
                         .scaled(k(3), F)
                         .plus(C.then(B, F).then(C, F).scaled(k(-3), F), F)
                         .plus(CC.then(B, F), F);
      return {lhs, zero};
    }
    case Identity::crucial_1:
      return {B.then(CC, F), CC.then(B, F)};
    case Identity::crucial_2:
    case Identity::squares_commute: {
      Operator BB = B.then(B, F);
      return {BB.then(CC, F), CC.then(BB, F)};
    }
    case Identity::crucial_3: {
      Operator BB = B.then(B, F);
      return {BC.then(BC, F), BB.then(CC, F).scaled(p - 1, F)};
    }
    case Identity::half_square:
      return {B.then(CC, F), C.then(B, F).then(C, F).scaled(k(2), F)};
  }
  throw ConfigError("unknown identity");
}

void require_characteristic(Identity id, std::uint32_t p) {
  switch (id) {
    case Identity::higgins_a:
    case Identity::higgins_b:
      if (p == 2 || p == 3)
        throw ConfigError(identity_name(id) + " needs characteristic other than 2 and 3");
      return;
    default:
      if (p != 5) throw ConfigError(identity_name(id) + " is stated for characteristic 5");
  }
}

}  // namespace

std::string identity_name(Identity id) {
  switch (id) {
    case Identity::higgins_a: return "higgins_a";
    case Identity::higgins_b: return "higgins_b";
    case Identity::crucial_1: return "crucial_1";
    case Identity::crucial_2: return "crucial_2";
    case Identity::crucial_3: return "crucial_3";
    case Identity::half_square: return "half_square";
    case Identity::squares_commute: return "squares_commute";
  }
  return "?";
}

Identity parse_identity(const std::string& name) {
  for (Identity id : kAll)
    if (identity_name(id) == name) return id;
  throw ConfigError("unknown identity '" + name + "'");
}

std::span<const Identity> all_identities() { return kAll; }

IdentitySides identity_sides(const AlgebraTable& a, Identity id, const LieElement& b,
                             const LieElement& c) {
  return sides_from(a, id, ad(a, b), ad(a, c), ad(a, a.bracket(b, c)));
}

namespace {

// A substitution value: a basis element or the sum of two of them.
struct Value {
  std::uint32_t i;
  std::int64_t j;  // -1 for a single basis element
  unsigned weight;  // lowest degree shift contributed by the terms not already covered
};

std::vector<Value> values_for(const AlgebraTable& a, unsigned var_degree, bool polarize) {
  std::vector<Value> out;
  auto deg = [&](std::uint32_t i) { return a.basis()[i].degree.total(); };
  for (std::uint32_t i = 0; i < a.dim(); ++i) out.push_back({i, -1, var_degree * deg(i)});
  if (var_degree == 2 && polarize)
    for (std::uint32_t i = 0; i < a.dim(); ++i)
      for (std::uint32_t j = i + 1; j < a.dim(); ++j)
        out.push_back({i, static_cast<std::int64_t>(j), deg(i) + deg(j)});
  return out;
}

}  // namespace

IdentityReport check_identity(const AlgebraTable& a, Identity id, const CheckOptions& options) {
  if (options.enforce_characteristic) require_characteristic(id, a.p());
  const gf::PrimeField& F = a.field();
  IdentityReport report{id, true, 0, options.seed, std::nullopt};

  const bool basis_only = id == Identity::squares_commute;
  const auto [db, dc] = variable_degrees(id);
  const std::vector<Value> vb = values_for(a, db, !basis_only);
  const std::vector<Value> vc = values_for(a, dc, !basis_only);
  const unsigned top = a.top_degree();

  struct Pair {
    LieElement b, c;
    const char* origin;
    std::optional<Value> vb, vc;  // set for basis and polarized pairs
  };
  std::vector<Pair> pairs;
  auto value_element = [&](const Value& v) {
    LieElement x = a.basis_element(v.i);
    if (v.j >= 0) x = lie_add(x, a.basis_element(static_cast<std::size_t>(v.j)), F);
    return x;
  };
  for (int pass = 0; pass < 2; ++pass)
    for (const Value& x : vb)
      for (const Value& y : vc) {
        const bool polarized = x.j >= 0 || y.j >= 0;
        if (polarized != (pass == 1)) continue;
        if (1 + x.weight + y.weight > top) continue;
        pairs.push_back({value_element(x), value_element(y), polarized ? "polarized" : "basis", x, y});
      }
  if (!basis_only) {
    Rng rng(options.seed);
    for (std::size_t t = 0; t < options.random_pairs; ++t) {
      LieElement b = random_element(a, rng);
      LieElement c = random_element(a, rng);
      pairs.push_back({std::move(b), std::move(c), "random", std::nullopt, std::nullopt});
    }
  }
  report.pairs_checked = pairs.size();

  std::vector<Operator> basis_ad;
  basis_ad.reserve(a.dim());
  for (std::uint32_t i = 0; i < a.dim(); ++i) basis_ad.push_back(ad(a, a.basis_element(i)));
  auto ad_of = [&](const std::optional<Value>& v, const LieElement& x) {
    if (!v) return ad(a, x);
    if (v->j < 0) return basis_ad[v->i];
    return basis_ad[v->i].plus(basis_ad[static_cast<std::size_t>(v->j)], F);
  };
  auto fails = [&](const Pair& pr) {
    IdentitySides s = sides_from(a, id, ad_of(pr.vb, pr.b), ad_of(pr.vc, pr.c),
                                 ad(a, a.bracket(pr.b, pr.c)));
    return !(s.lhs == s.rhs);
  };

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::size_t first = kNone;
  if (options.execution == Execution::serial) {
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (fails(pairs[i])) {
        first = i;
        break;
      }
  } else {
    std::atomic<std::size_t> best{kNone};
    std::exception_ptr error;
    const auto n = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < n; ++i) {
      if (static_cast<std::size_t>(i) > best.load()) continue;
      try {
        if (fails(pairs[static_cast<std::size_t>(i)])) {
          std::size_t cur = best.load();
          while (static_cast<std::size_t>(i) < cur &&
                 !best.compare_exchange_weak(cur, static_cast<std::size_t>(i))) {
          }
        }
      } catch (...) {
#pragma omp critical(engel_envelope_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    first = best.load();
  }
  if (first != kNone) {
    const Pair& pr = pairs[first];
    IdentitySides s = identity_sides(a, id, pr.b, pr.c);
    report.holds = false;
    report.counterexample = Counterexample{pr.origin, pr.b, pr.c, std::move(s.lhs), std::move(s.rhs)};
  }
  return report;
}

bool traustason_check(const AlgebraTable& a, const LieElement& x) {
  quotient::Subspace ideal = quotient::ideal_generated(a, std::span<const LieElement>(&x, 1));
  const gf::FpMatrix rows = ideal.matrix();
  gf::EchelonBasis derived(a.dim(), a.field());
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t j = i + 1; j < rows.rows(); ++j) derived.insert(a.bracket(rows.row(i), rows.row(j)));
  const gf::FpMatrix d = derived.to_matrix();
  for (const gf::FpVector& u : d.row_data())
    for (const gf::FpVector& v : rows.row_data())
      if (!a.bracket(u, v).is_zero()) return false;
  return true;
}

}  // namespace engel::envelope
