#pragma once

// Evaluation of the existential formulas
//   phi_k(z0..z3): exists y_1..y_{k+1}: f(z2,z3,y1) != 0,
//                  f(z1,y_i) = f(z2,y_{i+1}) for i <= k, f(z1,y_{k+1}) = 0
//   psi_k(z0..z3): exists x_1..x_k: f(z2,z3) = f(x1,z1),
//                  f(x_i,z2) = f(x_{i+1},z1) for i < k
// with f = f_{z0}, plus randomized joint probes and the chain propagation
// behind the incompatibility of phi_k and psi_l for l > k.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "engel/execution.hpp"
#include "engel/quotient.hpp"
#include "engel/random.hpp"

namespace engel::logic {

struct Tuple {
  LieElement z0, z1, z2, z3;
};

enum class Mode { exhaustive, randomized };
enum class Verdict { sat, unsat, unknown };

std::string verdict_name(Verdict v);

inline constexpr std::uint64_t kExhaustiveCeiling = std::uint64_t{1} << 26;

struct FormulaQuery {
  const quotient::AlgebraTable* algebra = nullptr;
  unsigned k = 2;
  Tuple tuple;
  Mode mode = Mode::randomized;
  std::size_t trials = 10000;
  std::uint64_t seed = kDefaultSeed;
  // Candidate inner witnesses tried before any search.
  std::optional<std::vector<LieElement>> injected;
  std::uint64_t ceiling = kExhaustiveCeiling;
  Execution execution = Execution::parallel;
};

struct FormulaResult {
  Verdict verdict = Verdict::unknown;
  std::vector<LieElement> witnesses;  // set when sat
  std::size_t trials = 0;             // randomized draws made
  std::uint64_t seed = kDefaultSeed;
  std::string how;                    // "injected", "exhaustive" or "randomized"
};

bool phi_holds(const quotient::AlgebraTable& t, unsigned k, const Tuple& z,
               const std::vector<LieElement>& ys);
bool psi_holds(const quotient::AlgebraTable& t, unsigned k, const Tuple& z,
               const std::vector<LieElement>& xs);

// Exhaustive mode throws BudgetError when p^(dim*(k+1)) (resp. p^(dim*k))
// exceeds the ceiling. Unsat is only ever returned by exhaustive mode.
FormulaResult eval_phi(const FormulaQuery& q);
FormulaResult eval_psi(const FormulaQuery& q);

struct Realisation {
  Tuple tuple;
  std::vector<LieElement> ys;
  std::vector<LieElement> xs;
};

struct ProbeResult {
  bool found = false;
  std::size_t trials = 0;
  std::uint64_t seed = kDefaultSeed;
  std::optional<Realisation> realisation;  // re-verified before being reported
};

// Randomized search for a joint realisation of phi_k and psi_l. With
// `seeded`, trial 0 evaluates that candidate before any random draws.
// Throws InvariantError if a candidate passes the search but fails the
// independent re-verification.
ProbeResult joint_probe(const quotient::AlgebraTable& t, unsigned k, unsigned l,
                        std::size_t budget, std::uint64_t seed,
                        const std::optional<Realisation>& seeded = std::nullopt,
                        Execution execution = Execution::parallel);

struct ChainStep {
  std::string hypothesis;
  bool hypothesis_holds = false;
  std::string conclusion;
  bool conclusion_holds = false;
};

struct PropagationReport {
  bool head_nonzero = false;  // f(z2,z3,y1) != 0
  std::vector<ChainStep> steps;
  // Every step whose hypothesis held also had its conclusion hold.
  bool implications_sound = true;
  // Index of the first step whose hypothesis fails, if any.
  std::optional<std::size_t> first_broken;
  // Head nonzero and every step held: the value f(x_{k+1},z1,y_{k+1}) would
  // be both nonzero and zero. Never true in a 3-Engel algebra over F_5.
  bool contradiction = false;
};

// Follows f(z2,z3,y1) along the phi_k and psi_l links (l > k), checking
// each "f(x,y) = f(x',y') implies f(x,y,w) = f(x',y',w)" step exactly.
PropagationReport propagate_chain(const quotient::AlgebraTable& t, unsigned k, const Tuple& z,
                                  const std::vector<LieElement>& ys,
                                  const std::vector<LieElement>& xs);

}  // namespace engel::logic
