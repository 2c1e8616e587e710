#include <benchmark/benchmark.h>

#include "sprlat/sprlat.hpp"

using namespace sprlat;

namespace {

double exponent_arg(std::int64_t code) { return code == 0 ? kInf : static_cast<double>(code); }

void BM_PhaseDistance(benchmark::State& state) {
  const double p = exponent_arg(state.range(0));
  Rng rng = make_rng(1);
  const CplxVec f = random_cplx(state.range(1), rng);
  const CplxVec g = random_cplx(state.range(1), rng);
  for (auto _ : state) benchmark::DoNotOptimize(unimodular_distance(f, g, NormSpec::lp(p)));
}
BENCHMARK(BM_PhaseDistance)->ArgsProduct({{0, 1, 2, 3}, {4, 32}});

void BM_HilbertFit(benchmark::State& state) {
  const double p = exponent_arg(state.range(0));
  Rng rng = make_rng(2);
  const CplxVec f = random_cplx(6, rng);
  const CplxVec g = random_cplx(6, rng);
  for (auto _ : state) benchmark::DoNotOptimize(fit_hilbert_norm(f, g, NormSpec::lp(p)));
}
BENCHMARK(BM_HilbertFit)->Arg(0)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

Subspace c4_subspace() {
  const Complex i{0.0, 1.0};
  CplxVec u(4), w(4);
  u << 1.0, 1.0, 1.0, 0.0;
  w << 1.0, i, 0.0, 1.0;
  return Subspace{Ambient{4, Field::complex, NormSpec::sup()}, {u, w}};
}

void BM_EstimateSprConstant(benchmark::State& state) {
  const Subspace E = c4_subspace();
  for (auto _ : state) benchmark::DoNotOptimize(estimate_spr_constant(E, SearchBudget{4, 400, 4}, 1));
}
BENCHMARK(BM_EstimateSprConstant)->Unit(benchmark::kMillisecond);

void BM_SearchPerpPair(benchmark::State& state) {
  const Subspace E = c4_subspace();
  for (auto _ : state) benchmark::DoNotOptimize(search_perp_pair(E, 0.1, SearchBudget{4, 400, 4}, 1));
}
BENCHMARK(BM_SearchPerpPair)->Unit(benchmark::kMillisecond);

void BM_AdpToSprViolation(benchmark::State& state) {
  CplxVec u(3), v(3);
  u << 1.0, 0.1, 0.0;
  v << 0.0, 0.1, 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(adp_to_spr_violation(u, v, NormSpec::sup()));
}
BENCHMARK(BM_AdpToSprViolation)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
