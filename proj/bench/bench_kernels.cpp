// Serial reference paths against the OpenMP kernels. Arg 0 is serial, 1 parallel.
#include <benchmark/benchmark.h>

#include "engel/engelmaps.hpp"
#include "engel/envelope.hpp"
#include "engel/logic.hpp"
#include "engel/quotient.hpp"
#include "engel/witness.hpp"

using namespace engel;

namespace {

Execution mode(const benchmark::State& s) { return s.range(0) ? Execution::parallel : Execution::serial; }

const quotient::AlgebraTable& rank3() {
  static const quotient::AlgebraTable t = quotient::build_quotient({.p = 5, .rank = 3, .engel_n = 3, .class_cap = 6});
  return t;
}

void BM_BuildQuotient(benchmark::State& s) {
  for (auto _ : s) {
    quotient::BuildOptions o{.p = 5, .rank = 3, .engel_n = 3, .class_cap = 6};
    o.execution = mode(s);
    benchmark::DoNotOptimize(quotient::build_quotient(o).dim());
  }
}

void BM_CheckIdentity(benchmark::State& s) {
  envelope::CheckOptions o;
  o.execution = mode(s);
  for (auto _ : s) benchmark::DoNotOptimize(envelope::check_identity(rank3(), envelope::Identity::crucial_3, o).holds);
}

void BM_FLaws(benchmark::State& s) {
  const maps::ProbeContext ctx(rank3(), rank3().generator(0));
  for (auto _ : s) benchmark::DoNotOptimize(maps::check_f_laws(ctx, 500, kDefaultSeed, mode(s)).all_passed());
}

void BM_JointProbe(benchmark::State& s) {
  for (auto _ : s)
    benchmark::DoNotOptimize(logic::joint_probe(rank3(), 2, 3, 20000, kDefaultSeed, std::nullopt, mode(s)).found);
}

void BM_MinimalVanishing(benchmark::State& s) {
  for (auto _ : s) benchmark::DoNotOptimize(witness::minimal_vanishing_n(rank3(), 16, mode(s)));
}

}  // namespace

BENCHMARK(BM_BuildQuotient)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CheckIdentity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FLaws)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JointProbe)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinimalVanishing)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
