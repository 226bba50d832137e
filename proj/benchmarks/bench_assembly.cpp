#include "morleyns/assembly.hpp"

#include <benchmark/benchmark.h>

using namespace morleyns;

static void BM_AssembleStiffness(benchmark::State& state) {
    const auto mesh = generate_voronoi_mesh(int(state.range(0)), 50, 3);
    const MorleyDofLayout layout(mesh);
    const auto ops = build_all_morley_ops(mesh, layout);
    for (auto _ : state) {
        auto A = assemble_A(mesh, layout, ops);
        benchmark::DoNotOptimize(A);
    }
    state.SetItemsProcessed(state.iterations() * mesh.num_cells());
}
BENCHMARK(BM_AssembleStiffness)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_AssembleJacobian(benchmark::State& state) {
    const auto mesh = generate_voronoi_mesh(int(state.range(0)), 50, 3);
    const MorleyDofLayout layout(mesh);
    const auto ops = build_all_morley_ops(mesh, layout);
    const SparseMat A = assemble_A(mesh, layout, ops);
    const Eigen::VectorXd psi = Eigen::VectorXd::Random(layout.size());
    for (auto _ : state) {
        auto J = assemble_jacobian(mesh, layout, ops, 0.01, A, psi);
        benchmark::DoNotOptimize(J);
    }
    state.SetItemsProcessed(state.iterations() * mesh.num_cells());
}
BENCHMARK(BM_AssembleJacobian)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_TrilinearAction(benchmark::State& state) {
    const auto mesh = generate_voronoi_mesh(int(state.range(0)), 50, 3);
    const MorleyDofLayout layout(mesh);
    const auto ops = build_all_morley_ops(mesh, layout);
    const Eigen::VectorXd zeta = Eigen::VectorXd::Random(layout.size());
    const Eigen::VectorXd phi = Eigen::VectorXd::Random(layout.size());
    for (auto _ : state) {
        auto r = apply_trilinear(mesh, layout, ops, zeta, phi);
        benchmark::DoNotOptimize(r);
    }
    state.SetItemsProcessed(state.iterations() * mesh.num_cells());
}
BENCHMARK(BM_TrilinearAction)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);
