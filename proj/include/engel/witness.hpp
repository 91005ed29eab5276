#pragma once

// Explicit realisation of the formulas phi_k and psi_k in the free 3-Engel
// algebra over F_5 on generators a, b_1, ..., b_n (n = 2k+1), and the
// nilpotency bound pipeline for 3-Engel tables.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "engel/engelmaps.hpp"
#include "engel/execution.hpp"
#include "engel/quotient.hpp"

namespace engel::witness {

// The inner witnesses y_i. `printed` takes y_i (1 < i <= k) on b_{k+1}..b_{2k}
// and y_{k+1} = [b_{k+1},...,b_{2k+1}]; with those the chain
// f(A1,y_i) = f(A2,y_{i+1}) breaks. `repaired` runs y_i (1 < i <= k) up to
// b_{2k+1} and sets y_{k+1} = [b_{k+2},...,b_{2k+1}].
enum class YReading { repaired, printed };

struct WitnessOptions {
  YReading ys = YReading::repaired;
  // Degree cap; defaults to 4k+3, the degree of [a, b_1^2, ..., b_n^2].
  std::optional<unsigned> class_budget;
  std::size_t max_dim = 2'000'000;
  Execution execution = Execution::parallel;
};

struct WitnessData {
  unsigned k = 2;
  unsigned n = 5;
  YReading reading = YReading::repaired;
  std::shared_ptr<const quotient::AlgebraTable> algebra;
  LieElement a;
  std::vector<LieElement> b;  // b[0] is b_1
  LieElement A0, A1, A2, A3;
  std::vector<LieElement> ys;  // y_1 .. y_{k+1}
  std::vector<LieElement> xs;  // x_1 .. x_k

  const LieElement& bi(unsigned i) const { return b.at(i - 1); }  // 1-based
  maps::ProbeContext context() const { return maps::ProbeContext(*algebra, A0); }
};

// Builds the algebra on 2k+2 generators with every b_i-weight capped at 2
// and the a-weight capped at 1, then the elements A_0..A_3, y_i, x_i.
WitnessData build_witness(unsigned k, const WitnessOptions& options = {});

struct Check {
  std::string name;
  bool passed = false;
  bool required = true;  // false for recorded intermediate values
  std::string detail;
};

struct ChainReport {
  std::vector<Check> checks;
  bool all_passed() const;           // every check, intermediates included
  bool required_passed() const;      // the conjuncts of the formula
  std::size_t required_count() const;
};

// f(A2,A3,y1) != 0 and equals [a,b_1^2,...,b_n^2]; f(A1,y_i) = f(A2,y_{i+1});
// f(A1,y_{k+1}) = 0.
ChainReport verify_phi_chain(const WitnessData& w);
// f(A2,A3) = f(x1,A1); f(x_i,A2) = f(x_{i+1},A1) for i < k.
ChainReport verify_psi_chain(const WitnessData& w);

// Controls: the same data with A1 replaced by A1 + b_1, or x1 by x1 + b_k.
WitnessData perturb_A1(const WitnessData& w);
WitnessData perturb_x1(const WitnessData& w);

struct WeightClaimReport {
  bool passed = true;
  std::size_t triples_checked = 0;
  std::optional<std::string> counterexample;
};

// For a = generator a_gen and every other generator g: q(M) = B(M,N) =
// B(N,M) = 0 for basis monomials M of g-weight >= 2 and N of g-weight 1.
// Only products that stay within the class cap are examined, so the check is
// meaningful only on tables whose cap is not reached.
WeightClaimReport verify_weight_claim(const quotient::AlgebraTable& table, std::size_t a_gen);

// Smallest n <= max_n with [x, u_1^2, ..., u_n^2] = 0 for all x, u_i.
std::optional<unsigned> minimal_vanishing_n(const quotient::AlgebraTable& table, unsigned max_n,
                                            Execution execution = Execution::parallel);

// span{[x, u, u]} as a subspace.
quotient::Subspace square_ideal(const quotient::AlgebraTable& table,
                                Execution execution = Execution::parallel);

struct PipelineReport {
  std::optional<unsigned> minimal_n;
  std::size_t ideal_dim = 0;
  bool ideal_closed = false;
  std::optional<bool> crucial_1_holds;  // checked when p = 5
  unsigned quotient_class = 0;
  unsigned bound = 0;  // 3 + 2(n-1)
  unsigned class_of_L = 0;
  bool bound_satisfied = false;
};

// Inconclusive if the table reaches its class cap.
PipelineReport theorem_pipeline(const quotient::AlgebraTable& table, unsigned max_n,
                                Execution execution = Execution::parallel);

}  // namespace engel::witness
