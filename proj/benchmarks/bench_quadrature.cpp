#include "morleyns/quadrature.hpp"

#include <benchmark/benchmark.h>

using namespace morleyns;

static void BM_PolygonRule(benchmark::State& state) {
    const auto mesh = generate_voronoi_mesh(64, 50, 3);
    const int degree = int(state.range(0));
    for (auto _ : state)
        for (const auto& cell : mesh.cells) {
            auto rule = polygon_rule(mesh, cell, degree);
            benchmark::DoNotOptimize(rule);
        }
    state.SetItemsProcessed(state.iterations() * mesh.num_cells());
}
BENCHMARK(BM_PolygonRule)->Arg(2)->Arg(6)->Arg(10);

static void BM_MonomialMoments(benchmark::State& state) {
    const auto mesh = generate_voronoi_mesh(64, 50, 3);
    for (auto _ : state)
        for (const auto& cell : mesh.cells) {
            const ScaledMonomialBasis basis(cell.centroid, cell.diameter, 2);
            const auto pts = mesh.cell_points(cell);
            auto mom = monomial_moments(pts, basis);
            benchmark::DoNotOptimize(mom);
        }
    state.SetItemsProcessed(state.iterations() * mesh.num_cells());
}
BENCHMARK(BM_MonomialMoments);

static void BM_CvtGeneration(benchmark::State& state) {
    for (auto _ : state) {
        auto mesh = generate_voronoi_mesh(int(state.range(0)), 100, 1234);
        benchmark::DoNotOptimize(mesh);
    }
}
BENCHMARK(BM_CvtGeneration)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
