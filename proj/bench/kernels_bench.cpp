// Serial reference vs OpenMP version of each data-parallel kernel.
#include <benchmark/benchmark.h>

#include "centrolab/kernels.hpp"
#include "centrolab/periodic_search.hpp"

using namespace centrolab;

namespace {

RigidityGrid bench_grid() {
    RigidityGrid g;
    g.c_steps = 17;
    g.e_steps = 17;
    g.q_steps = 481;
    return g;
}

std::vector<double> energies() {
    std::vector<double> e;
    for (int i = 0; i < 64; ++i) e.push_back(energy_at(1.0, 10.0, 0.01 + 0.015 * i));
    return e;
}

std::vector<double> phase_points() {
    std::vector<double> g(200000);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = 1e-4 * static_cast<double>(i);
    return g;
}

std::vector<Rational> exponents() {
    std::vector<Rational> as;
    for (int i = -200; i <= 200; ++i) as.push_back(Rational(i, 37));
    return as;
}

template <bool Parallel>
void BM_rigidity(benchmark::State& st) {
    const auto g = bench_grid();
    for (auto _ : st)
        benchmark::DoNotOptimize(Parallel ? kernels::rigidity_cells_parallel(-4.0, g)
                                          : kernels::rigidity_cells_serial(-4.0, g));
}

template <bool Parallel>
void BM_period_sweep(benchmark::State& st) {
    const auto e = energies();
    for (auto _ : st)
        benchmark::DoNotOptimize(Parallel ? kernels::period_sweep_parallel(1.0, 10.0, e)
                                          : kernels::period_sweep_serial(1.0, 10.0, e));
}

template <bool Parallel>
void BM_phase_grid(benchmark::State& st) {
    const auto g = phase_points();
    for (auto _ : st)
        benchmark::DoNotOptimize(Parallel ? kernels::phase_grid_parallel(0.8, 3, 0.2, g)
                                          : kernels::phase_grid_serial(0.8, 3, 0.2, g));
}

template <bool Parallel>
void BM_hessian_table(benchmark::State& st) {
    const auto as = exponents();
    for (auto _ : st)
        benchmark::DoNotOptimize(Parallel ? kernels::hessian_sign_table_parallel(as, 256)
                                          : kernels::hessian_sign_table_serial(as, 256));
}

}  // namespace

BENCHMARK(BM_rigidity<false>)->Name("rigidity/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rigidity<true>)->Name("rigidity/parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_period_sweep<false>)->Name("period_sweep/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_period_sweep<true>)->Name("period_sweep/parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_phase_grid<false>)->Name("phase_grid/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_phase_grid<true>)->Name("phase_grid/parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hessian_table<false>)->Name("hessian_table/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_hessian_table<true>)->Name("hessian_table/parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
