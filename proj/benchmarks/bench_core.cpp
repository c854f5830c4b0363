#include "secsym/dynamics.hpp"
#include "secsym/electrodynamics.hpp"
#include "secsym/observables.hpp"
#include "secsym/sampling.hpp"

#include <benchmark/benchmark.h>

#include <Eigen/Dense>

using namespace secsym;

namespace {

SymplecticContext make_ctx(int n, int m) {
    return SymplecticContext{Grid(1, {n}, {1.0}, Boundary::periodic),
                             FiberModel(Mat::Identity(m, m))};
}

void BM_quadrature(benchmark::State& state) {
    const Grid grid(1, {static_cast<int>(state.range(0))}, {1.0}, Boundary::periodic);
    Rng rng(1);
    const ScalarField f = rng.uniform_vec(static_cast<Index>(grid.nodes()), -1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(grid.quadrature(f));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_quadrature)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_diff(benchmark::State& state) {
    const Grid grid(1, {static_cast<int>(state.range(0))}, {1.0}, Boundary::periodic);
    Rng rng(2);
    const ScalarField f = rng.uniform_vec(static_cast<Index>(grid.nodes()), -1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(grid.diff(0, f));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_diff)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_omega_eval(benchmark::State& state) {
    const SymplecticContext ctx = make_ctx(static_cast<int>(state.range(0)), 2);
    Rng rng(3);
    const TangentField x = random_tangent(ctx.grid, 2, rng);
    const TangentField y = random_tangent(ctx.grid, 2, rng);
    for (auto _ : state) benchmark::DoNotOptimize(omega_eval(ctx, x, y));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_omega_eval)->RangeMultiplier(4)->Range(256, 4096)->Complexity();

void BM_hamiltonian_field(benchmark::State& state) {
    const SymplecticContext ctx = make_ctx(static_cast<int>(state.range(0)), 2);
    Rng rng(4);
    const ScalarField f = random_smooth_field(ctx.grid, rng, 3, 1.0);
    const Functional phi = smeared_position(ctx, f, 0);
    const PhaseSection gamma = PhaseSection::zero(2, ctx.grid.nodes());
    for (auto _ : state) benchmark::DoNotOptimize(hamiltonian_field(ctx, phi, gamma));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_hamiltonian_field)->RangeMultiplier(4)->Range(256, 4096)->Complexity();

void BM_leapfrog_step(benchmark::State& state) {
    SymplecticContext ctx = make_ctx(static_cast<int>(state.range(0)), 1);
    const KGParams params = make_kg(ctx, 0.5);
    Rng rng(5);
    PhaseSection gamma = random_section(ctx.grid, 1, rng, 0.5);
    const double dt = 0.1 * stability_dt(params);
    for (auto _ : state) {
        leapfrog_step(params, gamma, dt);
        benchmark::DoNotOptimize(gamma.q.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_leapfrog_step)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_tilde_flow_linear(benchmark::State& state) {
    const Grid grid(1, {static_cast<int>(state.range(0))}, {1.0}, Boundary::periodic);
    Rng rng(6);
    const VerticalField v = named_vertical("linear", 2, rng, 0.5);
    const PhaseSection gamma = random_section(grid, 2, rng);
    for (auto _ : state) benchmark::DoNotOptimize(tilde_flow(v, gamma, 0.1));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_tilde_flow_linear)->RangeMultiplier(4)->Range(256, 4096)->Complexity();

void BM_ed_kernel_analysis(benchmark::State& state) {
    const EDConfig ed = make_ed_config(
        Grid(1, {static_cast<int>(state.range(0))}, {1.0}, Boundary::periodic));
    for (auto _ : state) benchmark::DoNotOptimize(kernel_analysis(ed));
}
BENCHMARK(BM_ed_kernel_analysis)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
