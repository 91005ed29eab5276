#include "engel/logic.hpp"

#include <atomic>
#include <exception>
#include <limits>
#include <unordered_map>

#include "engel/engelmaps.hpp"
#include "engel/errors.hpp"

namespace engel::logic {

using quotient::AlgebraTable;

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::sat: return "sat";
    case Verdict::unsat: return "unsat";
    case Verdict::unknown: return "unknown";
  }
  return "?";
}

namespace {

maps::ProbeContext context(const AlgebraTable& t, const Tuple& z) {
  require_algebra(z.z1, t.id());
  require_algebra(z.z2, t.id());
  require_algebra(z.z3, t.id());
  return maps::ProbeContext(t, z.z0);
}

void require_k(unsigned k) {
  if (k < 2) throw ConfigError("formulas are defined for k >= 2");
}

// Independent generator per trial so results do not depend on scheduling.
Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ull * (trial + 1);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return Rng(x ^ (x >> 31));
}

std::uint64_t space_size(std::uint32_t p, std::size_t exponent, std::uint64_t cap) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (n > cap / p) return std::numeric_limits<std::uint64_t>::max();
    n *= p;
  }
  return n;
}

LieElement element_at(const AlgebraTable& t, std::uint64_t index) {
  std::vector<gf::Entry> entries;
  for (std::uint32_t i = 0; i < t.dim(); ++i) {
    auto v = static_cast<gf::Residue>(index % t.p());
    index /= t.p();
    if (v) entries.push_back({i, v});
  }
  return t.element(gf::FpVector::from_sorted(t.dim(), std::move(entries)));
}

std::string key_of(const LieElement& x) {
  std::string s;
  for (const gf::Entry& e : x.coeffs.entries()) {
    s.append(reinterpret_cast<const char*>(&e.index), sizeof e.index);
    s.append(reinterpret_cast<const char*>(&e.value), sizeof e.value);
  }
  return s;
}

// Lowest trial index in [0, trials) for which `hit(trial)` is true.
template <class Hit>
std::optional<std::size_t> first_hit(std::size_t trials, Execution execution, Hit&& hit) {
  if (execution == Execution::serial) {
    for (std::size_t i = 0; i < trials; ++i)
      if (hit(i)) return i;
    return std::nullopt;
  }
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> best{kNone};
  std::exception_ptr error;
  const auto n = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    if (u > best.load(std::memory_order_relaxed)) continue;
    try {
      if (hit(u)) {
        std::size_t cur = best.load();
        while (u < cur && !best.compare_exchange_weak(cur, u)) {
        }
      }
    } catch (...) {
#pragma omp critical(engel_logic_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  if (best.load() == kNone) return std::nullopt;
  return best.load();
}

std::vector<LieElement> draw(const AlgebraTable& t, Rng& rng, std::size_t count) {
  std::vector<LieElement> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_element(t, rng));
  return out;
}

// Layered exhaustive search over all elements. Witness w_{j+1} may follow w_j
// when in_value[w_{j+1}] = out_value[w_j]; first and last filter the ends.
FormulaResult layered(std::size_t layers,
                      const std::vector<LieElement>& all,
                      const std::vector<char>& first,
                      const std::vector<LieElement>& out_value,  // value carried forward
                      const std::vector<LieElement>& in_value,   // value matched on arrival
                      const std::vector<char>& last) {
  const std::size_t n = all.size();
  std::vector<std::vector<std::int64_t>> parent(layers, std::vector<std::int64_t>(n, -2));
  for (std::size_t y = 0; y < n; ++y)
    if (first[y]) parent[0][y] = -1;
  for (std::size_t layer = 1; layer < layers; ++layer) {
    std::unordered_map<std::string, std::size_t> targets;
    for (std::size_t y = 0; y < n; ++y)
      if (parent[layer - 1][y] != -2) targets.emplace(key_of(out_value[y]), y);
    if (targets.empty()) break;
    for (std::size_t y = 0; y < n; ++y) {
      auto it = targets.find(key_of(in_value[y]));
      if (it != targets.end()) parent[layer][y] = static_cast<std::int64_t>(it->second);
    }
  }
  FormulaResult r;
  r.how = "exhaustive";
  r.verdict = Verdict::unsat;
  for (std::size_t y = 0; y < n; ++y) {
    if (parent[layers - 1][y] == -2 || !last[y]) continue;
    std::vector<LieElement> chain(layers);
    std::int64_t cur = static_cast<std::int64_t>(y);
    for (std::size_t layer = layers; layer-- > 0;) {
      chain[layer] = all[static_cast<std::size_t>(cur)];
      cur = parent[layer][static_cast<std::size_t>(cur)];
    }
    r.verdict = Verdict::sat;
    r.witnesses = std::move(chain);
    break;
  }
  return r;
}

}  // namespace

bool phi_holds(const AlgebraTable& t, unsigned k, const Tuple& z, const std::vector<LieElement>& ys) {
  if (ys.size() != k + 1) throw ArityError("phi_k needs k+1 inner witnesses");
  const maps::ProbeContext ctx = context(t, z);
  if (ctx.f(z.z2, z.z3, ys[0]).is_zero()) return false;
  for (unsigned i = 0; i < k; ++i)
    if (!(ctx.f(z.z1, ys[i]) == ctx.f(z.z2, ys[i + 1]))) return false;
  return ctx.f(z.z1, ys[k]).is_zero();
}

bool psi_holds(const AlgebraTable& t, unsigned k, const Tuple& z, const std::vector<LieElement>& xs) {
  if (xs.size() != k) throw ArityError("psi_k needs k inner witnesses");
  const maps::ProbeContext ctx = context(t, z);
  if (!(ctx.f(z.z2, z.z3) == ctx.f(xs[0], z.z1))) return false;
  for (unsigned i = 0; i + 1 < k; ++i)
    if (!(ctx.f(xs[i], z.z2) == ctx.f(xs[i + 1], z.z1))) return false;
  return true;
}

namespace {

template <class Holds, class Exhaust>
FormulaResult evaluate(const FormulaQuery& q, std::size_t arity, Holds&& holds, Exhaust&& exhaust) {
  if (!q.algebra) throw ConfigError("query has no algebra");
  require_k(q.k);
  const AlgebraTable& t = *q.algebra;
  context(t, q.tuple);
  if (q.injected) {
    for (const LieElement& x : *q.injected) require_algebra(x, t.id());
    if (q.injected->size() == arity && holds(*q.injected)) {
      FormulaResult r;
      r.verdict = Verdict::sat;
      r.witnesses = *q.injected;
      r.seed = q.seed;
      r.how = "injected";
      return r;
    }
  }
  if (q.mode == Mode::exhaustive) {
    if (space_size(t.p(), t.dim() * arity, q.ceiling) > q.ceiling)
      throw BudgetError("exhaustive search space p^(dim*" + std::to_string(arity) +
                        ") exceeds the ceiling of " + std::to_string(q.ceiling));
    FormulaResult r = exhaust();
    r.seed = q.seed;
    if (r.verdict == Verdict::sat && !holds(r.witnesses))
      throw InvariantError("exhaustive witness failed re-verification");
    return r;
  }
  auto hit = first_hit(q.trials, q.execution, [&](std::size_t trial) {
    Rng rng = trial_rng(q.seed, trial);
    return holds(draw(t, rng, arity));
  });
  FormulaResult r;
  r.seed = q.seed;
  r.how = "randomized";
  if (hit) {
    Rng rng = trial_rng(q.seed, *hit);
    r.verdict = Verdict::sat;
    r.witnesses = draw(t, rng, arity);
    r.trials = *hit + 1;
  } else {
    r.verdict = Verdict::unknown;
    r.trials = q.trials;
  }
  return r;
}

std::vector<LieElement> all_elements(const AlgebraTable& t) {
  std::uint64_t n = space_size(t.p(), t.dim(), std::numeric_limits<std::uint64_t>::max() / 2);
  std::vector<LieElement> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(element_at(t, i));
  return out;
}

}  // namespace

FormulaResult eval_phi(const FormulaQuery& q) {
  return evaluate(
      q, q.k + 1, [&](const std::vector<LieElement>& ys) { return phi_holds(*q.algebra, q.k, q.tuple, ys); },
      [&] {
        const AlgebraTable& t = *q.algebra;
        const maps::ProbeContext ctx = context(t, q.tuple);
        const std::vector<LieElement> all = all_elements(t);
        std::vector<char> first(all.size()), last(all.size());
        std::vector<LieElement> out(all.size()), in(all.size());
        for (std::size_t y = 0; y < all.size(); ++y) {
          first[y] = !ctx.f(q.tuple.z2, q.tuple.z3, all[y]).is_zero();
          out[y] = ctx.f(q.tuple.z1, all[y]);
          in[y] = ctx.f(q.tuple.z2, all[y]);
          last[y] = out[y].is_zero();
        }
        return layered(q.k + 1, all, first, out, in, last);
      });
}

FormulaResult eval_psi(const FormulaQuery& q) {
  return evaluate(
      q, q.k, [&](const std::vector<LieElement>& xs) { return psi_holds(*q.algebra, q.k, q.tuple, xs); },
      [&] {
        const AlgebraTable& t = *q.algebra;
        const maps::ProbeContext ctx = context(t, q.tuple);
        const std::vector<LieElement> all = all_elements(t);
        const LieElement head = ctx.f(q.tuple.z2, q.tuple.z3);
        std::vector<char> first(all.size()), last(all.size(), 1);
        std::vector<LieElement> out(all.size()), in(all.size());
        for (std::size_t x = 0; x < all.size(); ++x) {
          in[x] = ctx.f(all[x], q.tuple.z1);
          out[x] = ctx.f(all[x], q.tuple.z2);
          first[x] = in[x] == head;
        }
        return layered(q.k, all, first, out, in, last);
      });
}

ProbeResult joint_probe(const AlgebraTable& t, unsigned k, unsigned l, std::size_t budget,
                        std::uint64_t seed, const std::optional<Realisation>& seeded,
                        Execution execution) {
  require_k(k);
  if (l < k) throw ConfigError("joint probe needs l >= k");
  std::uniform_int_distribution<int> coin(0, 1);
  // Half the draws are sparse (one or two basis terms): equalities between
  // f-values are far likelier among sparse elements.
  auto element = [&](Rng& rng) {
    if (coin(rng) == 0 || t.dim() == 0) return random_element(t, rng);
    std::uniform_int_distribution<std::uint32_t> idx(0, static_cast<std::uint32_t>(t.dim() - 1));
    std::uniform_int_distribution<std::uint32_t> val(1, t.p() - 1);
    const int terms = 1 + coin(rng);
    std::vector<gf::Entry> e;
    for (int i = 0; i < terms; ++i) e.push_back({idx(rng), val(rng)});
    return t.element(gf::FpVector::from_entries(t.dim(), std::move(e), t.field()));
  };
  auto candidate = [&](std::size_t trial) {
    if (trial == 0 && seeded) return *seeded;
    Rng rng = trial_rng(seed, trial);
    Realisation r;
    r.tuple = {element(rng), element(rng), element(rng), element(rng)};
    for (unsigned i = 0; i <= k; ++i) r.ys.push_back(element(rng));
    for (unsigned i = 0; i < l; ++i) r.xs.push_back(element(rng));
    return r;
  };
  auto holds = [&](const Realisation& r) {
    return phi_holds(t, k, r.tuple, r.ys) && psi_holds(t, l, r.tuple, r.xs);
  };
  auto hit = first_hit(budget, execution, [&](std::size_t trial) { return holds(candidate(trial)); });

  ProbeResult out;
  out.seed = seed;
  out.trials = hit ? *hit + 1 : budget;
  if (hit) {
    Realisation r = candidate(*hit);
    if (!holds(r)) throw InvariantError("joint probe candidate failed re-verification");
    out.found = true;
    out.realisation = std::move(r);
  }
  return out;
}

PropagationReport propagate_chain(const AlgebraTable& t, unsigned k, const Tuple& z,
                                  const std::vector<LieElement>& ys,
                                  const std::vector<LieElement>& xs) {
  require_k(k);
  if (ys.size() != k + 1) throw ArityError("chain needs k+1 phi witnesses");
  if (xs.size() < k + 1) throw ArityError("chain needs at least k+1 psi witnesses (l > k)");
  const maps::ProbeContext ctx = context(t, z);
  const LieElement &A1 = z.z1, &A2 = z.z2, &A3 = z.z3;
  auto s = [](unsigned i) { return std::to_string(i); };

  PropagationReport r;
  r.head_nonzero = !ctx.f(A2, A3, ys[0]).is_zero();
  auto step = [&](std::string hyp, bool hyp_ok, std::string concl, bool concl_ok) {
    r.steps.push_back({std::move(hyp), hyp_ok, std::move(concl), concl_ok});
    if (hyp_ok && !concl_ok) r.implications_sound = false;
    if (!hyp_ok && !r.first_broken) r.first_broken = r.steps.size() - 1;
  };

  step("f(A2,A3) = f(x1,A1)", ctx.f(A2, A3) == ctx.f(xs[0], A1),
       "f(A2,A3,y1) = f(x1,A1,y1)", ctx.f(A2, A3, ys[0]) == ctx.f(xs[0], A1, ys[0]));
  for (unsigned i = 1; i <= k; ++i) {
    const LieElement& x = xs[i - 1];
    const LieElement& y = ys[i - 1];
    const LieElement& yn = ys[i];
    step("f(A1,y" + s(i) + ") = f(A2,y" + s(i + 1) + ")", ctx.f(A1, y) == ctx.f(A2, yn),
         "f(x" + s(i) + ",A1,y" + s(i) + ") = f(x" + s(i) + ",A2,y" + s(i + 1) + ")",
         ctx.f(x, A1, y) == ctx.f(x, A2, yn));
    step("f(x" + s(i) + ",A2) = f(x" + s(i + 1) + ",A1)", ctx.f(x, A2) == ctx.f(xs[i], A1),
         "f(x" + s(i) + ",A2,y" + s(i + 1) + ") = f(x" + s(i + 1) + ",A1,y" + s(i + 1) + ")",
         ctx.f(x, A2, yn) == ctx.f(xs[i], A1, yn));
  }
  step("f(A1,y" + s(k + 1) + ") = 0", ctx.f(A1, ys[k]).is_zero(),
       "f(x" + s(k + 1) + ",A1,y" + s(k + 1) + ") = 0", ctx.f(xs[k], A1, ys[k]).is_zero());
  r.contradiction = r.head_nonzero && !r.first_broken && r.implications_sound;
  return r;
}

}  // namespace engel::logic
