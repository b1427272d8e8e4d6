#include <benchmark/benchmark.h>

#include "coarsesep/cayley.hpp"
#include "coarsesep/cuts.hpp"
#include "coarsesep/kernels.hpp"

using namespace coarsesep;
using kernels::Exec;

namespace {

const GraphProduct& pentagon_z3() {
    static const GraphProduct gp(cycle_graph(cyclic_labels({3, 3, 3, 3, 3})));
    return gp;
}

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::serial : Exec::parallel; }

void BM_NextLayer(benchmark::State& state) {
    const auto& gp = pentagon_z3();
    const BallLayers layers(gp, 4);
    for (auto _ : state) {
        auto next = kernels::next_layer(gp, layers.codec(), layers.layer(4), 4, exec_of(state));
        benchmark::DoNotOptimize(next.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * layers.layer(4).size()));
}

void BM_InducedAdjacency(benchmark::State& state) {
    const auto& gp = pentagon_z3();
    const BallLayers layers(gp, 6);
    const auto keys = thickened_sphere_keys(gp, layers, 4, 2);
    for (auto _ : state) {
        auto adj = kernels::induced_adjacency(gp, layers.codec(), keys, exec_of(state));
        benchmark::DoNotOptimize(adj.targets.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * keys.size()));
}

void BM_FarPairFlows(benchmark::State& state) {
    static const auto s = thickened_sphere(pentagon_z3(), 4, 2);
    FarPairPolicy p;
    p.depth = 2;
    p.max_pairs = 8;
    p.exec = exec_of(state);
    for (auto _ : state) {
        auto r = flow_far_pair_lower_bound(s, Delta(1, 2), p);
        benchmark::DoNotOptimize(r.value);
    }
}

}  // namespace

// Argument 0 runs the serial reference, 1 the OpenMP kernel.
BENCHMARK(BM_NextLayer)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InducedAdjacency)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FarPairFlows)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
