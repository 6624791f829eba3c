#include <benchmark/benchmark.h>

#include "numrad/radius.hpp"
#include "numrad/relations.hpp"
#include "numrad/sampling.hpp"

using namespace numrad;

namespace {

Operator sample(const NormedSpace& s, std::uint64_t stream) { return Sampler(1, stream).op(s); }

NormedSpace space_for(int64_t code) {
  switch (code) {
    case 0:
      return NormedSpace::lp(2, 2.0);
    case 1:
      return NormedSpace::lp(2, 4.0);
    case 2:
      return NormedSpace::l1(2);
    case 3:
      return NormedSpace::lp(2, 2.0, Field::Complex);
    default:
      return NormedSpace::lp(static_cast<int>(code), 3.0);
  }
}

}  // namespace

static void BM_NumericalRadius(benchmark::State& state) {
  const NormedSpace s = space_for(state.range(0));
  const Operator t = sample(s, 0);
  for (auto _ : state) benchmark::DoNotOptimize(numerical_radius(s, t).value);
  state.SetLabel(s.name() + "/" + to_string(s.field()) + "/dim" + std::to_string(s.dim()));
}
BENCHMARK(BM_NumericalRadius)->Arg(0)->Arg(1)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_RadiusGridSize(benchmark::State& state) {
  const NormedSpace s = NormedSpace::lp(2, 4.0);
  const Operator t = sample(s, 0);
  EngineConfig cfg;
  cfg.grid_size = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(numerical_radius(s, t, cfg).value);
}
BENCHMARK(BM_RadiusGridSize)->RangeMultiplier(4)->Range(64, 16384)->Unit(benchmark::kMicrosecond);

static void BM_NrParallel(benchmark::State& state) {
  const NormedSpace s = space_for(state.range(0));
  const Operator t = sample(s, 0);
  const Operator u = sample(s, 1);
  for (auto _ : state) benchmark::DoNotOptimize(nr_parallel(s, t, u).gap);
  state.SetLabel(s.name() + "/" + to_string(s.field()));
}
BENCHMARK(BM_NrParallel)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_NrBirkhoff(benchmark::State& state) {
  const NormedSpace s = space_for(state.range(0));
  const Operator t = sample(s, 0);
  const Operator u = sample(s, 1);
  for (auto _ : state) benchmark::DoNotOptimize(nr_birkhoff(s, t, u).gap);
  state.SetLabel(s.name() + "/" + to_string(s.field()));
}
BENCHMARK(BM_NrBirkhoff)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_NormEvaluation(benchmark::State& state) {
  const NormedSpace s = space_for(state.range(0));
  const Vector x = Sampler(2, 0).unit_vector(s);
  for (auto _ : state) benchmark::DoNotOptimize(s.norm(x));
}
BENCHMARK(BM_NormEvaluation)->Arg(0)->Arg(1)->Arg(2)->Arg(5);

BENCHMARK_MAIN();
