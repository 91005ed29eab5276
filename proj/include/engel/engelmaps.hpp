#pragma once

// The maps attached to a fixed element a:
//   B(x, y) = [a, x, y],  q(x) = [a, x, x],  f(x1, ..., xn) = q([x1, ..., xn]).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "engel/execution.hpp"
#include "engel/quotient.hpp"
#include "engel/random.hpp"

namespace engel::maps {

class ProbeContext {
 public:
  ProbeContext(const quotient::AlgebraTable& table, LieElement a);

  const quotient::AlgebraTable& table() const noexcept { return *table_; }
  const LieElement& a() const noexcept { return a_; }

  LieElement B(const LieElement& x, const LieElement& y) const;
  LieElement q(const LieElement& x) const;
  LieElement f(std::span<const LieElement> args) const;  // ArityError below two arguments
  LieElement f(const LieElement& x, const LieElement& y) const;
  LieElement f(const LieElement& x, const LieElement& y, const LieElement& z) const;

 private:
  const quotient::AlgebraTable* table_;
  LieElement a_;
};

// [a, x1^2, ..., xn^2]
LieElement square_word(const ProbeContext& ctx, std::span<const LieElement> xs);

struct LawResult {
  std::string law;
  bool passed = true;
  std::size_t checked = 0;
  std::optional<std::string> counterexample;
};

struct FLawReport {
  std::vector<LawResult> laws;
  std::size_t samples = 0;
  std::uint64_t seed = kDefaultSeed;
  bool all_passed() const;
};

struct Sample {
  LieElement x, y, z;
};

// Seeded random samples; the laws are then checked on each one.
FLawReport check_f_laws(const ProbeContext& ctx, std::size_t samples = 500,
                        std::uint64_t seed = kDefaultSeed,
                        Execution execution = Execution::parallel);

// Same laws on caller-supplied samples (seed reported as given).
FLawReport check_f_laws_on(const ProbeContext& ctx, std::span<const Sample> samples,
                           std::uint64_t seed = kDefaultSeed,
                           Execution execution = Execution::parallel);

std::vector<std::string> f_law_names();

}  // namespace engel::maps
