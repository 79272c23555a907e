#include "centrolab/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>

#include <omp.h>

#include "centrolab/deformation.hpp"
#include "centrolab/error.hpp"
#include "centrolab/special_third.hpp"

namespace centrolab::kernels {

namespace {

std::atomic<int> g_override{0};

int env_cap() {
    const char* s = std::getenv("LAB_THREADS");
    if (!s) return 0;
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end == s || v < 1) return 0;
    return static_cast<int>(std::min<long>(v, 4096));
}

std::pair<std::vector<double>, std::vector<double>> cell_axes(const RigidityGrid& grid) {
    return {rigidity_axis(grid.log_c_min, grid.log_c_max, grid.c_steps),
            rigidity_axis(grid.log_e_min, grid.log_e_max, grid.e_steps)};
}

double period_or_nan(double b, double c, double E) {
    try {
        return 2.0 * half_period(b, c, E);
    } catch (const LabError&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

int sign_of(const Rational& r) { return r > Rational(0) ? 1 : (r < Rational(0) ? -1 : 0); }

}  // namespace

int thread_count() {
    int n = g_override.load();
    if (n < 1) n = omp_get_max_threads();
    if (const int cap = env_cap(); cap > 0) n = std::min(n, cap);
    return std::max(n, 1);
}

void set_thread_count(int n) { g_override.store(std::max(n, 0)); }

std::vector<double> rigidity_axis(double log_min, double log_max, std::size_t steps) {
    std::vector<double> axis;
    axis.reserve(2 * steps + 1);
    for (std::size_t i = 0; i < steps; ++i) {
        const double x = steps == 1 ? log_min
                                    : log_min + (log_max - log_min) * static_cast<double>(i) /
                                                    static_cast<double>(steps - 1);
        axis.push_back(std::pow(10.0, x));
    }
    const std::size_t m = axis.size();
    for (std::size_t i = 0; i < m; ++i) axis.push_back(-axis[i]);
    axis.push_back(0.0);
    std::sort(axis.begin(), axis.end());
    return axis;
}

std::vector<CellVerdict> rigidity_cells_serial(double b, const RigidityGrid& grid) {
    const auto [cs, es] = cell_axes(grid);
    std::vector<CellVerdict> out(cs.size() * es.size());
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = 0; j < es.size(); ++j) out[i * es.size() + j] = scan_cell(b, cs[i], es[j], grid);
    return out;
}

std::vector<CellVerdict> rigidity_cells_parallel(double b, const RigidityGrid& grid) {
    const auto [cs, es] = cell_axes(grid);
    const long total = static_cast<long>(cs.size() * es.size());
    std::vector<CellVerdict> out(static_cast<std::size_t>(total));
    const std::size_t ne = es.size();
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (long idx = 0; idx < total; ++idx) {
        const auto u = static_cast<std::size_t>(idx);
        out[u] = scan_cell(b, cs[u / ne], es[u % ne], grid);
    }
    return out;
}

std::vector<double> period_sweep_serial(double b, double c, const std::vector<double>& energies) {
    std::vector<double> out(energies.size());
    for (std::size_t i = 0; i < energies.size(); ++i) out[i] = period_or_nan(b, c, energies[i]);
    return out;
}

std::vector<double> period_sweep_parallel(double b, double c, const std::vector<double>& energies) {
    std::vector<double> out(energies.size());
    const long n = static_cast<long>(energies.size());
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = period_or_nan(b, c, energies[static_cast<std::size_t>(i)]);
    return out;
}

std::vector<double> phase_grid_serial(double eps, int n, double C, const std::vector<double>& grid) {
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = solve_phase(eps, n, C, grid[i]);
    return out;
}

std::vector<double> phase_grid_parallel(double eps, int n, double C, const std::vector<double>& grid) {
    std::vector<double> out(grid.size());
    const long m = static_cast<long>(grid.size());
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (long i = 0; i < m; ++i) out[static_cast<std::size_t>(i)] = solve_phase(eps, n, C, grid[static_cast<std::size_t>(i)]);
    return out;
}

std::vector<int> hessian_sign_table_serial(const std::vector<Rational>& as, int K) {
    std::vector<int> out(as.size() * static_cast<std::size_t>(K));
    for (std::size_t i = 0; i < as.size(); ++i)
        for (int k = 1; k <= K; ++k)
            out[i * static_cast<std::size_t>(K) + static_cast<std::size_t>(k - 1)] =
                sign_of(hessian_coefficient(as[i], Rational(k)));
    return out;
}

std::vector<int> hessian_sign_table_parallel(const std::vector<Rational>& as, int K) {
    std::vector<int> out(as.size() * static_cast<std::size_t>(K));
    const long total = static_cast<long>(out.size());
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (long idx = 0; idx < total; ++idx) {
        const auto u = static_cast<std::size_t>(idx);
        const auto i = u / static_cast<std::size_t>(K);
        const int k = static_cast<int>(u % static_cast<std::size_t>(K)) + 1;
        out[u] = sign_of(hessian_coefficient(as[i], Rational(k)));
    }
    return out;
}

}  // namespace centrolab::kernels
