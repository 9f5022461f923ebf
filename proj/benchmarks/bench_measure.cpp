#include <benchmark/benchmark.h>

#include "qwalk/qintegral.hpp"
#include "qwalk/qmeasure.hpp"

#include <random>

using namespace qwalk;

namespace {

Event half_event(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const PathSpace s(n);
  std::vector<PathIndex> m;
  for (PathIndex j = 0; j < s.size(); ++j)
    if (rng() & 1U) m.push_back(j);
  return Event(s, m);
}

template <MeasureStrategy S>
void BM_Mu(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DecoherenceState st(n);
  const Event a = half_event(n, 42);
  if constexpr (S == MeasureStrategy::Dense) st.dense();
  for (auto _ : state) benchmark::DoNotOptimize(mu(st, a, S));
  state.counters["paths"] = static_cast<double>(a.cardinality());
}

BENCHMARK_TEMPLATE(BM_Mu, MeasureStrategy::Dense)->DenseRange(4, 12, 2);
BENCHMARK_TEMPLATE(BM_Mu, MeasureStrategy::Pairwise)->DenseRange(4, 12, 2);
BENCHMARK_TEMPLATE(BM_Mu, MeasureStrategy::Rank2)->DenseRange(4, 20, 4);

void BM_MuCosparse(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DecoherenceState st(n);
  const Event a = Event(st.space(), {0, 3, 5}).complement();
  for (auto _ : state) benchmark::DoNotOptimize(mu(st, a));
}
BENCHMARK(BM_MuCosparse)->Arg(20)->Arg(40)->Arg(62);

void BM_PreclusionCensus(benchmark::State& state) {
  const DecoherenceState st(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_precluded(st));
}
BENCHMARK(BM_PreclusionCensus)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_PreclusionBounded(benchmark::State& state) {
  const DecoherenceState st(6);
  PreclusionOptions opt;
  opt.max_cardinality = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_precluded(st, opt));
}
BENCHMARK(BM_PreclusionBounded)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

template <IntegralStrategy S>
void BM_Integral(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DecoherenceState st(n);
  const auto f = RandomVariable::changes(st.space()) - RandomVariable::ones(st.space());
  for (auto _ : state) benchmark::DoNotOptimize(integral(st, f, S));
}

BENCHMARK_TEMPLATE(BM_Integral, IntegralStrategy::Definition)->DenseRange(2, 8, 2);
BENCHMARK_TEMPLATE(BM_Integral, IntegralStrategy::Trace)->DenseRange(2, 8, 2);
BENCHMARK_TEMPLATE(BM_Integral, IntegralStrategy::Eigen)->DenseRange(2, 14, 4);

}  // namespace

BENCHMARK_MAIN();
