#include "morleyns/crouzeix_raviart.hpp"
#include "morleyns/morley.hpp"

#include <benchmark/benchmark.h>

using namespace morleyns;

namespace {

PolygonalMesh bench_mesh(int family, int n) {
    switch (family) {
    case 0: return generate_square_mesh(n);
    case 1: return generate_triangle_mesh(n);
    case 2: return generate_voronoi_mesh(n * n, 50, 7);
    default: return generate_trapezoid_mesh(n);
    }
}

} // namespace

static void BM_MorleyLocalOps(benchmark::State& state) {
    const auto mesh = bench_mesh(int(state.range(0)), 16);
    const MorleyDofLayout layout(mesh);
    for (auto _ : state) {
        auto ops = build_all_morley_ops(mesh, layout);
        benchmark::DoNotOptimize(ops);
    }
    state.SetItemsProcessed(state.iterations() * mesh.num_cells());
}
BENCHMARK(BM_MorleyLocalOps)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

static void BM_CRLocalOps(benchmark::State& state) {
    const auto mesh = bench_mesh(int(state.range(0)), 16);
    const CRDofLayout layout(mesh);
    for (auto _ : state) {
        auto ops = build_all_cr_ops(mesh, layout);
        benchmark::DoNotOptimize(ops);
    }
    state.SetItemsProcessed(state.iterations() * mesh.num_cells());
}
BENCHMARK(BM_CRLocalOps)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
