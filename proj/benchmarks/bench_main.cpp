#include <benchmark/benchmark.h>

#include <vector>

#include "stwave/error_norms.hpp"
#include "stwave/study.hpp"

using namespace stwave;

namespace {

StudyConfig config_for(int p) {
    StudyConfig c;
    c.degree = p;
    return c;
}

Mesh1D mesh_x(int level) { return refine_uniform(starting_spatial_mesh(), level); }
Mesh1D mesh_t(int level) { return refine_uniform(starting_temporal_mesh(10.0), level); }

} // namespace

// args: degree, level
static void BM_AssembleTemporal(benchmark::State& state) {
    const LagrangeBasis basis(static_cast<int>(state.range(0)));
    const auto mt = mesh_t(static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_temporal(mt, basis, true));
    }
}
BENCHMARK(BM_AssembleTemporal)->Args({1, 8})->Args({2, 7})->Args({6, 5});

static void BM_AssembleLoad(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    const int level = static_cast<int>(state.range(1));
    const auto c = config_for(p);
    const LagrangeBasis basis(p);
    const auto mx = mesh_x(level);
    const auto mt = mesh_t(level);
    const QuadraturePlan px(mx, load_quadrature(c, Axis::space, 1.0));
    const QuadraturePlan pt(mt, load_quadrature(c, Axis::time, 10.0));
    const auto u1 = make_u1(10.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_load(u1.f, mx, mt, basis, px, pt));
    }
    state.counters["dof"] = static_cast<double>(dof_at_level(p, level));
}
BENCHMARK(BM_AssembleLoad)->Args({1, 6})->Args({2, 5})->Args({6, 3})->Unit(benchmark::kMillisecond);

// args: degree, level, solver (0 time marching, 1 banded)
static void BM_Solve(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    const int level = static_cast<int>(state.range(1));
    const LagrangeBasis basis(p);
    const KroneckerSystem system{assemble_temporal(mesh_t(level), basis, true), assemble_spatial(mesh_x(level), basis)};
    const std::vector<double> rhs(system.dimension(), 1.0);
    SolveOptions options;
    options.kind = state.range(2) == 0 ? SolverKind::time_marching : SolverKind::banded;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(system, rhs, options));
    }
    state.counters["dof"] = static_cast<double>(system.dimension());
}
BENCHMARK(BM_Solve)
    ->Args({1, 7, 0})
    ->Args({2, 6, 0})
    ->Args({6, 4, 0})
    ->Args({1, 4, 0})
    ->Args({1, 4, 1})
    ->Args({6, 2, 0})
    ->Args({6, 2, 1})
    ->Unit(benchmark::kMillisecond);

static void BM_ErrorNorms(benchmark::State& state) {
    const int p = static_cast<int>(state.range(0));
    const int level = static_cast<int>(state.range(1));
    const auto c = config_for(p);
    const auto u1 = make_u1(10.0);
    const auto sol = solve_level(c, level, u1.f);
    const DiscreteSolution uh(sol.result.solution, sol.mesh_x, sol.mesh_t, sol.basis);
    const QuadraturePlan px(sol.mesh_x, error_quadrature(c, Axis::space, 1.0));
    const QuadraturePlan pt(sol.mesh_t, error_quadrature(c, Axis::time, 10.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(error_norms(uh, u1, px, pt));
    }
}
BENCHMARK(BM_ErrorNorms)->Args({1, 6})->Args({2, 5})->Args({6, 3})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
