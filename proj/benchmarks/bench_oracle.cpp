#include <benchmark/benchmark.h>

#include "truncdist/distinguish.hpp"
#include "truncdist/oracle.hpp"

using namespace truncdist;

static void BM_SampleFunctionWorld(benchmark::State& state) {
    Params p(32, 16, static_cast<std::uint64_t>(state.range(0)));
    BatchSampler sampler(p);
    ReplySequence out;
    std::uint64_t trial = 0;
    for (auto _ : state) {
        SplitMix64 rng = stream_rng(1, trial++);
        sampler.sample(World::Function, rng, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleFunctionWorld)->Arg(64)->Arg(1024)->Arg(16384);

static void BM_SamplePermutationWorld(benchmark::State& state) {
    Params p(32, 16, static_cast<std::uint64_t>(state.range(0)));
    BatchSampler sampler(p);
    ReplySequence out;
    std::uint64_t trial = 0;
    for (auto _ : state) {
        SplitMix64 rng = stream_rng(1, trial++);
        sampler.sample(World::Permutation, rng, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SamplePermutationWorld)->Arg(64)->Arg(1024)->Arg(16384);

static void BM_McAdvantageLr(benchmark::State& state) {
    Params p(16, 8, 1024);
    Distinguisher lr = Distinguisher::likelihood_ratio(p);
    for (auto _ : state) {
        AdvEstimate est = mc_advantage(lr, static_cast<std::uint64_t>(state.range(0)), 7, 1);
        benchmark::DoNotOptimize(est.point);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 2);
}
BENCHMARK(BM_McAdvantageLr)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
