#pragma once

// Data-parallel loops with a serial reference implementation of each.
// Parallel versions use static scheduling and write each result to its own
// slot, so both variants return identical vectors.

#include <cstddef>
#include <vector>

#include "centrolab/periodic_search.hpp"
#include "centrolab/rational.hpp"

namespace centrolab::kernels {

/// Worker count honoured by the parallel kernels (LAB_THREADS caps it).
int thread_count();
void set_thread_count(int n);

std::vector<double> rigidity_axis(double log_min, double log_max, std::size_t steps);

std::vector<CellVerdict> rigidity_cells_serial(double b, const RigidityGrid& grid);
std::vector<CellVerdict> rigidity_cells_parallel(double b, const RigidityGrid& grid);

/// Full periods 2 * half_period(b, c, E) for a list of energies (NaN where no orbit).
std::vector<double> period_sweep_serial(double b, double c, const std::vector<double>& energies);
std::vector<double> period_sweep_parallel(double b, double c, const std::vector<double>& energies);

/// Phase solve of phi - eps cos(phi) = n t + C on a grid.
std::vector<double> phase_grid_serial(double eps, int n, double C, const std::vector<double>& grid);
std::vector<double> phase_grid_parallel(double eps, int n, double C, const std::vector<double>& grid);

/// Sign of a h_k for every (a, k) pair, k = 1..K; row-major by a.
std::vector<int> hessian_sign_table_serial(const std::vector<Rational>& as, int K);
std::vector<int> hessian_sign_table_parallel(const std::vector<Rational>& as, int K);

}  // namespace centrolab::kernels
