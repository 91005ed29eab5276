#include "engel/engelmaps.hpp"

#include <algorithm>
#include <array>
#include <exception>

#include "engel/errors.hpp"
#include "engel/format.hpp"

namespace engel::maps {

ProbeContext::ProbeContext(const quotient::AlgebraTable& table, LieElement a)
    : table_(&table), a_(std::move(a)) {
  require_algebra(a_, table.id());
}

LieElement ProbeContext::B(const LieElement& x, const LieElement& y) const {
  return table_->bracket(table_->bracket(a_, x), y);
}

LieElement ProbeContext::q(const LieElement& x) const { return B(x, x); }

LieElement ProbeContext::f(std::span<const LieElement> args) const {
  if (args.size() < 2) throw ArityError("f needs at least two arguments");
  return q(table_->left_normed(args));
}

LieElement ProbeContext::f(const LieElement& x, const LieElement& y) const {
  return q(table_->bracket(x, y));
}

LieElement ProbeContext::f(const LieElement& x, const LieElement& y, const LieElement& z) const {
  return q(table_->bracket(table_->bracket(x, y), z));
}

LieElement square_word(const ProbeContext& ctx, std::span<const LieElement> xs) {
  const auto& t = ctx.table();
  LieElement out = ctx.a();
  for (const LieElement& x : xs) out = t.bracket(t.bracket(out, x), x);
  return out;
}

bool FLawReport::all_passed() const {
  return std::all_of(laws.begin(), laws.end(), [](const LawResult& l) { return l.passed; });
}

namespace {

const std::array<const char*, 9> kLaws = {
    "f(x,x) = 0",
    "f(x,y) = f(y,x)",
    "f([x,y],z) = f(x,[y,z])",
    "f(x,y,z) = f([x,y],z)",
    "f(x,y,z) invariant under all 6 permutations",
    "f(x,y) = -[a,x^2,y^2] and f(x,y,z) = [a,x^2,y^2,z^2]",
    "[f(x,y),z^2] = -f(x,y,z)",
    "f(x,y) = f(x',y') implies f(x,y,z) = f(x',y',z)",
    "f(x,y) = 0 implies f(x,y,z) = 0",
};

// Per-law outcome for one sample: 0 pass, 1 fail, 2 not applicable.
using Outcome = std::array<std::uint8_t, kLaws.size()>;

Outcome check_sample(const ProbeContext& ctx, const Sample& s) {
  const auto& t = ctx.table();
  const gf::PrimeField& F = t.field();
  const LieElement &x = s.x, &y = s.y, &z = s.z;
  Outcome o{};
  auto set = [&](std::size_t law, bool ok) { o[law] = ok ? 0 : 1; };

  set(0, ctx.f(x, x).is_zero());
  const LieElement fxy = ctx.f(x, y);
  const LieElement fyx = ctx.f(y, x);
  set(1, fxy == fyx);
  const LieElement xy = t.bracket(x, y);
  const LieElement yz = t.bracket(y, z);
  const LieElement f_xy_z = ctx.f(xy, z);
  const LieElement f_x_yz = ctx.f(x, yz);
  set(2, f_xy_z == f_x_yz);
  const LieElement fxyz = ctx.f(x, y, z);
  const std::array<LieElement, 3> args{x, y, z};
  set(3, fxyz == ctx.f(std::span<const LieElement>(args)) && fxyz == f_xy_z);

  std::array<int, 3> perm{0, 1, 2};
  bool perms = true;
  do {
    perms = perms && ctx.f(args[perm[0]], args[perm[1]], args[perm[2]]) == fxyz;
  } while (std::next_permutation(perm.begin(), perm.end()));
  set(4, perms);

  const std::array<LieElement, 2> two{x, y};
  set(5, lie_add(fxy, square_word(ctx, two), F).is_zero() && square_word(ctx, args) == fxyz);
  set(6, lie_add(t.bracket(t.bracket(fxy, z), z), fxyz, F).is_zero());

  // Constructed equal pairs: (x,y) against (y,x), and ([x,y],z) against
  // (x,[y,z]) extended by x. The hypothesis is re-checked before use.
  bool cond = true;
  std::size_t used = 0;
  if (fxy == fyx) {
    ++used;
    cond = cond && fxyz == ctx.f(y, x, z);
  }
  if (f_xy_z == f_x_yz) {
    ++used;
    cond = cond && ctx.f(xy, z, x) == ctx.f(x, yz, x);
  }
  o[7] = used == 0 ? 2 : (cond ? 0 : 1);

  // Zero pairs: (x, c x) for a scalar c taken from the sample, plus the pair
  // itself when f(x,y) happens to vanish.
  const gf::Residue c = z.coeffs.is_zero() ? 1 : z.coeffs.entries().front().value;
  const LieElement cx = lie_scale(x, c, F);
  bool zero_rule = true;
  if (ctx.f(x, cx).is_zero()) zero_rule = ctx.f(x, cx, z).is_zero();
  if (fxy.is_zero()) zero_rule = zero_rule && fxyz.is_zero();
  set(8, zero_rule);
  return o;
}

std::string describe(const ProbeContext& ctx, std::size_t index, const Sample& s) {
  const auto& t = ctx.table();
  return "sample " + std::to_string(index) + ": x = " + format_element(t, s.x) +
         "; y = " + format_element(t, s.y) + "; z = " + format_element(t, s.z);
}

}  // namespace

std::vector<std::string> f_law_names() { return {kLaws.begin(), kLaws.end()}; }

FLawReport check_f_laws_on(const ProbeContext& ctx, std::span<const Sample> samples,
                           std::uint64_t seed, Execution execution) {
  std::vector<Outcome> outcomes(samples.size());
  const auto n = static_cast<std::int64_t>(samples.size());
  if (execution == Execution::serial) {
    for (std::int64_t i = 0; i < n; ++i) outcomes[i] = check_sample(ctx, samples[i]);
  } else {
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < n; ++i) {
      try {
        outcomes[i] = check_sample(ctx, samples[i]);
      } catch (...) {
#pragma omp critical(engel_maps_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
  }

  FLawReport report;
  report.samples = samples.size();
  report.seed = seed;
  for (std::size_t law = 0; law < kLaws.size(); ++law) {
    LawResult r{kLaws[law], true, 0, std::nullopt};
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (outcomes[i][law] == 2) continue;
      ++r.checked;
      if (outcomes[i][law] == 1 && r.passed) {
        r.passed = false;
        r.counterexample = describe(ctx, i, samples[i]);
      }
    }
    report.laws.push_back(std::move(r));
  }
  return report;
}

FLawReport check_f_laws(const ProbeContext& ctx, std::size_t samples, std::uint64_t seed,
                        Execution execution) {
  Rng rng(seed);
  std::vector<Sample> drawn;
  drawn.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    LieElement x = random_element(ctx.table(), rng);
    LieElement y = random_element(ctx.table(), rng);
    LieElement z = random_element(ctx.table(), rng);
    drawn.push_back({std::move(x), std::move(y), std::move(z)});
  }
  return check_f_laws_on(ctx, drawn, seed, execution);
}

}  // namespace engel::maps
