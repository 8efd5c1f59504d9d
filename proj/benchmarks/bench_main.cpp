#include <benchmark/benchmark.h>

#include "gamred/flow.hpp"
#include "gamred/generator.hpp"
#include "gamred/independence.hpp"
#include "gamred/reduce.hpp"
#include "gamred/verify.hpp"

namespace {

gamred::GammoidInstance bench_instance(int vertices, std::uint64_t seed) {
    gamred::GenParams p;
    p.n_vertices = vertices;
    p.n_edges = vertices + vertices / 2;
    p.n_sources = std::max(2, vertices / 5);
    p.n_sinks = std::max(1, vertices / 10);
    p.layers = 4;
    p.seed = seed;
    return gamred::gen_random(p);
}

void BM_IndependenceOracle(benchmark::State& state) {
    auto inst = bench_instance(static_cast<int>(state.range(0)), 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gamred::is_independent(inst, inst.sources));
    }
}
BENCHMARK(BM_IndependenceOracle)->Arg(40)->Arg(80)->Arg(120);

void BM_ColoringNumber(benchmark::State& state) {
    auto inst = bench_instance(static_cast<int>(state.range(0)), 11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gamred::coloring_number(inst));
    }
}
BENCHMARK(BM_ColoringNumber)->Arg(40)->Arg(80)->Arg(120);

void BM_PartitionReduction(benchmark::State& state) {
    auto inst = bench_instance(static_cast<int>(state.range(0)), 13);
    gamred::ReduceOptions opts;
    opts.check_tree_flow_each_step = false;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gamred::partition_reduction(inst, opts));
    }
}
BENCHMARK(BM_PartitionReduction)->Arg(40)->Arg(80)->Arg(120);

void BM_PartitionReductionChecked(benchmark::State& state) {
    auto inst = bench_instance(static_cast<int>(state.range(0)), 13);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gamred::partition_reduction(inst));
    }
}
BENCHMARK(BM_PartitionReductionChecked)->Arg(80);

void BM_WeakMapVerification(benchmark::State& state) {
    auto inst = bench_instance(80, 17);
    auto pr = gamred::partition_reduction(inst);
    gamred::WeakMapOptions opts;
    opts.exhaustive_budget = 2000;
    opts.samples = 500;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gamred::verify_weak_map(inst, pr, opts));
    }
}
BENCHMARK(BM_WeakMapVerification);

}  // namespace

BENCHMARK_MAIN();
