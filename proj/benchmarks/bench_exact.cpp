#include <benchmark/benchmark.h>

#include "truncdist/bounds.hpp"
#include "truncdist/exact.hpp"

using namespace truncdist;

static void BM_ExactAdvantage(benchmark::State& state) {
    Params p(8, 2, static_cast<std::uint64_t>(state.range(0)));
    for (auto _ : state) {
        ExactAdvantageReport report = exact_advantage(p);
        benchmark::DoNotOptimize(report.profiles_enumerated);
    }
}
BENCHMARK(BM_ExactAdvantage)->Arg(16)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

static void BM_StamBound(benchmark::State& state) {
    Params p(40, 20, 1 << 20);
    for (auto _ : state) {
        BoundValue b = stam_bound(p);
        benchmark::DoNotOptimize(b.value);
    }
}
BENCHMARK(BM_StamBound);

static void BM_QHalfFromBound(benchmark::State& state) {
    for (auto _ : state) {
        QHalfCertificate cert = q_half_from_bound(BoundId::Stam, 40, 20);
        benchmark::DoNotOptimize(cert.first_q_at_half);
    }
}
BENCHMARK(BM_QHalfFromBound)->Unit(benchmark::kMillisecond);
