#include <cmath>
#include <cstdlib>
#include <cstring>

#include "doctest.h"

#include "centrolab/kernels.hpp"
#include "centrolab/periodic_search.hpp"

using namespace centrolab;

namespace {

bool same_bits(const std::vector<double>& x, const std::vector<double>& y) {
    return x.size() == y.size() && std::memcmp(x.data(), y.data(), x.size() * sizeof(double)) == 0;
}

struct ThreadGuard {
    ~ThreadGuard() {
        kernels::set_thread_count(0);
        unsetenv("LAB_THREADS");
    }
};

}  // namespace

TEST_CASE("rigidity axis") {
    const auto ax = kernels::rigidity_axis(-2.0, 2.0, 5);
    CHECK(ax.size() == 11);
    CHECK(std::is_sorted(ax.begin(), ax.end()));
    CHECK(ax[5] == 0.0);
    CHECK(ax.front() == doctest::Approx(-100.0));
    CHECK(ax.back() == doctest::Approx(100.0));
}

TEST_CASE("serial and parallel kernels agree") {
    ThreadGuard guard;
    for (int threads : {1, 2, 4}) {
        kernels::set_thread_count(threads);
        CAPTURE(threads);
        RigidityGrid grid;
        grid.c_steps = 7;
        grid.e_steps = 7;
        grid.q_steps = 121;
        for (double b : {-4.0, 1.0, -0.5}) {
            const auto s = kernels::rigidity_cells_serial(b, grid);
            const auto p = kernels::rigidity_cells_parallel(b, grid);
            REQUIRE(s.size() == p.size());
            for (std::size_t i = 0; i < s.size(); ++i) {
                CHECK(s[i].bounded_components == p[i].bounded_components);
                CHECK(s[i].concave == p[i].concave);
            }
        }
        std::vector<double> energies;
        for (int i = 0; i < 24; ++i) energies.push_back(energy_at(1.0, 3.0, 0.02 + 0.04 * i));
        energies.push_back(1e6);  // no orbit: NaN in both
        const auto ps = kernels::period_sweep_serial(1.0, 3.0, energies);
        CHECK(same_bits(ps, kernels::period_sweep_parallel(1.0, 3.0, energies)));
        CHECK(std::isnan(ps.back()));

        std::vector<double> grid_t(999);
        for (std::size_t i = 0; i < grid_t.size(); ++i) grid_t[i] = 0.01 * static_cast<double>(i);
        CHECK(same_bits(kernels::phase_grid_serial(0.9, 2, 0.1, grid_t),
                        kernels::phase_grid_parallel(0.9, 2, 0.1, grid_t)));

        std::vector<Rational> as;
        for (int i = -30; i <= 30; ++i) as.push_back(Rational(i, 11));
        const auto hs = kernels::hessian_sign_table_serial(as, 32);
        CHECK(hs.size() == as.size() * 32);
        CHECK(hs == kernels::hessian_sign_table_parallel(as, 32));
    }
}

TEST_CASE("hessian sign table values") {
    // a = 2: h_2 = 0 and every other coefficient is positive
    const auto t = kernels::hessian_sign_table_serial({Rational(2)}, 5);
    CHECK(t == std::vector<int>{1, 0, 1, 1, 1});
}

TEST_CASE("LAB_THREADS caps the worker count") {
    ThreadGuard guard;
    kernels::set_thread_count(8);
    CHECK(kernels::thread_count() == 8);
    setenv("LAB_THREADS", "3", 1);
    CHECK(kernels::thread_count() == 3);
    setenv("LAB_THREADS", "junk", 1);
    CHECK(kernels::thread_count() == 8);
    setenv("LAB_THREADS", "1", 1);
    kernels::set_thread_count(0);
    CHECK(kernels::thread_count() == 1);
}
