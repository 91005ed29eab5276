#include "engel/witness.hpp"

#include <algorithm>
#include <exception>

#include "engel/envelope.hpp"
#include "engel/errors.hpp"
#include "engel/format.hpp"

namespace engel::witness {

using quotient::AlgebraTable;

namespace {

LieElement sum(const AlgebraTable& t, const std::vector<LieElement>& xs) {
  LieElement out = t.zero();
  for (const LieElement& x : xs) out = lie_add(out, x, t.field());
  return out;
}

}  // namespace

WitnessData build_witness(unsigned k, const WitnessOptions& options) {
  if (k < 2) throw ConfigError("witness needs k >= 2");
  const unsigned n = 2 * k + 1;
  const std::size_t rank = n + 1;
  if (rank > MultiDegree::kMaxRank) throw ConfigError("k too large for the supported rank");

  std::vector<unsigned> bound(rank, 2);
  bound[0] = 1;
  quotient::BuildOptions opt;
  opt.p = 5;
  opt.rank = rank;
  opt.engel_n = 3;
  opt.class_cap = options.class_budget.value_or(4 * k + 3);
  opt.multidegree_cap = 2;
  opt.weight_bound = MultiDegree::from_counts(bound);
  opt.execution = options.execution;
  opt.max_dim = options.max_dim;

  WitnessData w;
  w.k = k;
  w.n = n;
  w.algebra = std::make_shared<const AlgebraTable>(quotient::build_quotient(opt));
  const AlgebraTable& t = *w.algebra;
  w.a = t.generator(0);
  for (unsigned i = 1; i <= n; ++i) w.b.push_back(t.generator(i));
  auto b = [&](unsigned i) -> const LieElement& { return w.b.at(i - 1); };
  auto word = [&](std::vector<unsigned> idx) {
    std::vector<LieElement> args;
    for (unsigned i : idx) args.push_back(b(i));
    return args.size() == 1 ? args[0] : t.left_normed(args);
  };
  auto range = [](unsigned lo, unsigned hi, std::optional<unsigned> skip = std::nullopt) {
    std::vector<unsigned> out;
    for (unsigned i = lo; i <= hi; ++i)
      if (!skip || *skip != i) out.push_back(i);
    return out;
  };

  w.A0 = w.a;
  std::vector<LieElement> terms;
  for (unsigned i = 2; i <= k; ++i) terms.push_back(word({i, k + i}));
  terms.push_back(word({1, k + 1, 2 * k + 1}));
  w.A1 = sum(t, terms);
  terms.clear();
  for (unsigned i = 1; i <= k - 1; ++i) terms.push_back(word({i, k + i + 1}));
  terms.push_back(word({k, k + 1}));
  w.A2 = sum(t, terms);
  std::vector<unsigned> a3 = range(1, k - 1);
  a3.push_back(2 * k + 1);
  w.A3 = word(a3);

  w.reading = options.ys;
  const bool printed = options.ys == YReading::printed;
  const unsigned top = printed ? 2 * k : 2 * k + 1;
  w.ys.push_back(word(range(k + 2, 2 * k)));
  for (unsigned i = 2; i <= k; ++i) w.ys.push_back(word(range(k + 1, top, k + i)));
  w.ys.push_back(word(range(printed ? k + 1 : k + 2, 2 * k + 1)));
  for (unsigned i = 1; i <= k; ++i) w.xs.push_back(word(range(1, k, i)));
  return w;
}

bool ChainReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

bool ChainReport::required_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return !c.required || c.passed; });
}

std::size_t ChainReport::required_count() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const Check& c) { return c.required; }));
}

namespace {

std::vector<LieElement> bs(const WitnessData& w, std::vector<unsigned> idx) {
  std::vector<LieElement> out;
  for (unsigned i : idx) out.push_back(w.bi(i));
  return out;
}

Check equality(const AlgebraTable& t, std::string name, const LieElement& x, const LieElement& y,
               bool required) {
  Check c{std::move(name), x == y, required, ""};
  c.detail = c.passed ? "value " + format_element(t, x)
                      : "lhs " + format_element(t, x) + " | rhs " + format_element(t, y);
  return c;
}

std::string idx(unsigned i) { return std::to_string(i); }

}  // namespace

ChainReport verify_phi_chain(const WitnessData& w) {
  const AlgebraTable& t = *w.algebra;
  const maps::ProbeContext ctx = w.context();
  const unsigned k = w.k;
  ChainReport r;

  const LieElement head = ctx.f(w.A2, w.A3, w.ys[0]);
  r.checks.push_back({"f(A2,A3,y1) != 0", !head.is_zero(), true, "value " + format_element(t, head)});
  const LieElement squares = maps::square_word(ctx, w.b);
  r.checks.push_back(equality(t, "f(A2,A3,y1) = [a,b1^2,...,b" + idx(w.n) + "^2]", head, squares, true));
  std::vector<unsigned> all;
  for (unsigned i = 1; i <= w.n; ++i) all.push_back(i);
  r.checks.push_back(
      equality(t, "q([b1,...,b" + idx(w.n) + "]) = [a,b1^2,...,b" + idx(w.n) + "^2]",
               ctx.f(bs(w, all)), squares, false));

  for (unsigned i = 1; i <= k; ++i) {
    const LieElement lhs = ctx.f(w.A1, w.ys[i - 1]);
    const LieElement rhs = ctx.f(w.A2, w.ys[i]);
    r.checks.push_back(equality(t, "f(A1,y" + idx(i) + ") = f(A2,y" + idx(i + 1) + ")", lhs, rhs, true));
    // Printed intermediate: f(b_i, b_{k+1}, ..., b_{2k}); with the repaired
    // y_i the letters run to b_{2k+1}.
    const unsigned hi = w.reading == YReading::printed ? 2 * k : 2 * k + 1;
    std::vector<unsigned> mid{i};
    for (unsigned j = k + 1; j <= hi; ++j) mid.push_back(j);
    const LieElement expected = ctx.f(bs(w, mid));
    const std::string tail = "f(b" + idx(i) + ",b" + idx(k + 1) + ",...,b" + idx(hi) + ")";
    r.checks.push_back(equality(t, "f(A1,y" + idx(i) + ") = " + tail, lhs, expected, false));
    r.checks.push_back(equality(t, "f(A2,y" + idx(i + 1) + ") = " + tail, rhs, expected, false));
  }
  const LieElement last = ctx.f(w.A1, w.ys[k]);
  r.checks.push_back({"f(A1,y" + idx(k + 1) + ") = 0", last.is_zero(), true,
                      "value " + format_element(t, last)});
  return r;
}

ChainReport verify_psi_chain(const WitnessData& w) {
  const AlgebraTable& t = *w.algebra;
  const maps::ProbeContext ctx = w.context();
  const unsigned k = w.k;
  ChainReport r;

  const LieElement lhs = ctx.f(w.A2, w.A3);
  const LieElement rhs = ctx.f(w.xs[0], w.A1);
  r.checks.push_back(equality(t, "f(A2,A3) = f(x1,A1)", lhs, rhs, true));
  std::vector<unsigned> first;
  for (unsigned i = 1; i <= k + 1; ++i) first.push_back(i);
  first.push_back(2 * k + 1);
  r.checks.push_back(equality(t, "f(A2,A3) = f(b1,...,b" + idx(k + 1) + ",b" + idx(2 * k + 1) + ")",
                              lhs, ctx.f(bs(w, first)), false));

  for (unsigned i = 1; i + 1 <= k; ++i) {
    const LieElement l = ctx.f(w.xs[i - 1], w.A2);
    const LieElement rr = ctx.f(w.xs[i], w.A1);
    r.checks.push_back(equality(t, "f(x" + idx(i) + ",A2) = f(x" + idx(i + 1) + ",A1)", l, rr, true));
    std::vector<unsigned> mid;
    for (unsigned j = 1; j <= k; ++j) mid.push_back(j);
    mid.push_back(k + i + 1);
    r.checks.push_back(equality(
        t, "f(x" + idx(i) + ",A2) = f(b1,...,b" + idx(k) + ",b" + idx(k + i + 1) + ")", l,
        ctx.f(bs(w, mid)), false));
  }
  return r;
}

WitnessData perturb_A1(const WitnessData& w) {
  WitnessData out = w;
  out.A1 = lie_add(w.A1, w.bi(1), w.algebra->field());
  return out;
}

WitnessData perturb_x1(const WitnessData& w) {
  WitnessData out = w;
  out.xs[0] = lie_add(w.xs[0], w.bi(w.k), w.algebra->field());
  return out;
}

WeightClaimReport verify_weight_claim(const AlgebraTable& t, std::size_t a_gen) {
  if (a_gen >= t.rank()) throw ConfigError("generator index out of range");
  WeightClaimReport r;
  const maps::ProbeContext ctx(t, t.generator(a_gen));
  const unsigned cap = t.header().class_cap;
  auto deg = [&](std::size_t i) { return t.basis()[i].degree.total(); };
  for (std::size_t g = 0; g < t.rank() && r.passed; ++g) {
    if (g == a_gen) continue;
    std::vector<std::size_t> heavy, light;
    for (std::size_t i = 0; i < t.dim(); ++i) {
      const unsigned wgt = t.basis()[i].degree[g];
      if (wgt >= 2) heavy.push_back(i);
      if (wgt == 1) light.push_back(i);
    }
    auto fail = [&](const std::string& what) {
      r.passed = false;
      r.counterexample = what;
    };
    for (std::size_t m : heavy) {
      if (1 + 2 * deg(m) <= cap) {
        ++r.triples_checked;
        if (!ctx.q(t.basis_element(m)).is_zero()) {
          fail("q(" + t.basis()[m].word + ") != 0");
          break;
        }
      }
      for (std::size_t nn : light) {
        if (1 + deg(m) + deg(nn) > cap) continue;
        r.triples_checked += 2;
        const LieElement M = t.basis_element(m), N = t.basis_element(nn);
        if (!ctx.B(M, N).is_zero() || !ctx.B(N, M).is_zero()) {
          fail("B(" + t.basis()[m].word + ", " + t.basis()[nn].word + ") != 0");
          break;
        }
      }
      if (!r.passed) break;
    }
  }
  return r;
}

namespace {

std::vector<gf::FpVector> rows_of(const gf::EchelonBasis& e) {
  const gf::FpMatrix m = e.to_matrix();
  return {m.row_data().begin(), m.row_data().end()};
}

// span{[v, u, u] : v in V, u in L} from a spanning set of V. Uses
// ad(u)^2 spanned by ad(e_i)^2 and ad(e_i)ad(e_j) + ad(e_j)ad(e_i).
gf::EchelonBasis apply_squares(const AlgebraTable& t, const std::vector<gf::FpVector>& vs,
                               Execution execution) {
  const gf::PrimeField& F = t.field();
  const std::size_t d = t.dim();
  std::vector<std::vector<gf::FpVector>> images(vs.size());
  auto work = [&](std::size_t vi) {
    const gf::FpVector& v = vs[vi];
    std::vector<gf::FpVector> tv(d);
    for (std::uint32_t j = 0; j < d; ++j) tv[j] = t.bracket(v, gf::FpVector::unit(d, j));
    gf::EchelonBasis local(d, F);
    for (std::uint32_t i = 0; i < d; ++i)
      for (std::uint32_t j = i; j < d; ++j) {
        gf::FpVector x = t.bracket(tv[i], gf::FpVector::unit(d, j));
        if (i != j) x = gf::add(x, t.bracket(tv[j], gf::FpVector::unit(d, i)), F);
        if (!x.is_zero()) local.insert(std::move(x));
      }
    images[vi] = rows_of(local);
  };
  const auto n = static_cast<std::int64_t>(vs.size());
  if (execution == Execution::serial) {
    for (std::int64_t i = 0; i < n; ++i) work(static_cast<std::size_t>(i));
  } else {
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) {
      try {
        work(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(engel_witness_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
  }
  gf::EchelonBasis out(d, F);
  for (auto& rows : images)
    for (auto& r : rows) out.insert(std::move(r));
  out.finalize();
  return out;
}

}  // namespace

std::optional<unsigned> minimal_vanishing_n(const AlgebraTable& t, unsigned max_n,
                                            Execution execution) {
  std::vector<gf::FpVector> v;
  for (std::uint32_t i = 0; i < t.dim(); ++i) v.push_back(gf::FpVector::unit(t.dim(), i));
  for (unsigned n = 1; n <= max_n; ++n) {
    v = rows_of(apply_squares(t, v, execution));
    if (v.empty()) return n;
  }
  return std::nullopt;
}

quotient::Subspace square_ideal(const AlgebraTable& t, Execution execution) {
  std::vector<gf::FpVector> v;
  for (std::uint32_t i = 0; i < t.dim(); ++i) v.push_back(gf::FpVector::unit(t.dim(), i));
  return quotient::Subspace(t.id(), apply_squares(t, v, execution));
}

PipelineReport theorem_pipeline(const AlgebraTable& t, unsigned max_n, Execution execution) {
  const quotient::ClassInfo info = quotient::nilpotency_class(t);
  if (info.cap_reached)
    throw Inconclusive("class cap " + std::to_string(t.header().class_cap) +
                       " reached; the class of the algebra is not known");
  PipelineReport r;
  r.class_of_L = info.nilpotency_class;
  const quotient::Subspace ideal = square_ideal(t, execution);
  r.ideal_dim = ideal.dim();
  r.ideal_closed = quotient::is_ideal(t, ideal);
  if (t.p() == 5) {
    envelope::CheckOptions co;
    co.execution = execution;
    r.crucial_1_holds = envelope::check_identity(t, envelope::Identity::crucial_1, co).holds;
  }
  if (r.ideal_closed)
    r.quotient_class = quotient::nilpotency_class(quotient::quotient_by_ideal(t, ideal)).nilpotency_class;
  r.minimal_n = minimal_vanishing_n(t, max_n, execution);
  if (r.minimal_n) {
    r.bound = 3 + 2 * (*r.minimal_n - 1);
    r.bound_satisfied = r.class_of_L <= r.bound;
  }
  return r;
}

}  // namespace engel::witness
