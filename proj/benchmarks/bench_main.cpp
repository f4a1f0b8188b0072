#include <benchmark/benchmark.h>

#include "pgequiv/equiv.hpp"
#include "pgequiv/random.hpp"

using namespace pgequiv;

static void BM_FieldMul(benchmark::State& state) {
  const auto f = Field::make(static_cast<unsigned>(state.range(0)));
  Elem acc = 1;
  Elem x = f->primitive();
  for (auto _ : state) {
    acc = f->mul(acc, x);
    x = f->add(x, 1);
    if (x == 0) x = 1;
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_FieldMul)->Arg(3)->Arg(16)->Arg(27)->Arg(64);

static void BM_CanonicalIncidence(benchmark::State& state) {
  const auto q = static_cast<unsigned>(state.range(0));
  const auto inc = incidence(PointTable(Field::make(q), 3));
  const auto m = ColoredBinaryMatrix::uncolored(inc.bits);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(m).group_order);
}
BENCHMARK(BM_CanonicalIncidence)->Arg(2)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_CeimpgKey(benchmark::State& state) {
  const auto f = Field::make(3);
  Rng rng(1);
  const auto g = random_code(10, 3, f, rng, false);
  for (auto _ : state) benchmark::DoNotOptimize(ceimpg_key(g));
}
BENCHMARK(BM_CeimpgKey)->Unit(benchmark::kMicrosecond);

static void BM_CesimpgPair(benchmark::State& state) {
  const auto f = Field::make(3);
  Rng rng(2);
  const auto g1 = random_code(static_cast<std::size_t>(state.range(0)), 3, f, rng, false);
  const auto g2 = random_code(static_cast<std::size_t>(state.range(0)), 3, f, rng, false);
  for (auto _ : state) benchmark::DoNotOptimize(cesimpg_equiv(g1, g2).kind);
}
BENCHMARK(BM_CesimpgPair)->Arg(10)->Arg(20)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
