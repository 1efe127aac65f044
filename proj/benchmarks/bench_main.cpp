#include <benchmark/benchmark.h>

#include "qcalc/cyclotomic.hpp"

static void BM_Cyclotomic(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(qcalc::cyclotomic(static_cast<unsigned long>(state.range(0))));
    }
}
BENCHMARK(BM_Cyclotomic)->Arg(6)->Arg(105);

BENCHMARK_MAIN();
