#include <benchmark/benchmark.h>

#include "truncdist/profile.hpp"

using namespace truncdist;

static void BM_ProfileOf(benchmark::State& state) {
    Params p(24, 12, static_cast<std::uint64_t>(state.range(0)));
    ReplySequence omega = sample_reply_sequence(p, World::Function, 3);
    for (auto _ : state) {
        MultiplicityProfile prof = profile_of(omega);
        benchmark::DoNotOptimize(prof.parts.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ProfileOf)->Arg(256)->Arg(4096);

static void BM_EnumerateProfiles(benchmark::State& state) {
    const std::uint64_t q = static_cast<std::uint64_t>(state.range(0));
    Params p(12, 6, q);
    std::uint64_t profiles = 0;
    for (auto _ : state) {
        Int total = 0;
        ProfileEnumerator en(p, false);
        ProfileWeight w;
        profiles = 0;
        while (en.next(w)) {
            total += w.count;
            ++profiles;
        }
        benchmark::DoNotOptimize(total);
    }
    state.counters["profiles"] = static_cast<double>(profiles);
}
BENCHMARK(BM_EnumerateProfiles)->Arg(30)->Arg(40)->Arg(60)->Unit(benchmark::kMillisecond);
