#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "centrolab/error.hpp"
#include "centrolab/kernels.hpp"
#include "centrolab/periodic_search.hpp"

using namespace centrolab;
using std::numbers::pi;

namespace {

// period from the flow: first return of P to 0 from above after the maximum
double flow_period(double b, double c, double E) {
    const auto tp = turning_points(b, c, E);
    REQUIRE(tp);
    const double guess = 2.0 * half_period(b, c, E);
    const auto tr = integrate_flow({tp->m, 0.0}, b, c, 1.5 * guess, 6000);
    for (std::size_t i = 1; i < tr.points.size(); ++i) {
        const auto& p0 = tr.points[i - 1];
        const auto& p1 = tr.points[i];
        if (p0.t > 0.75 * guess && p0.P < 0.0 && p1.P >= 0.0) {
            // refine the crossing on the dense output
            double lo = p0.t, hi = p1.t;
            for (int k = 0; k < 80; ++k) {
                const double mid = 0.5 * (lo + hi);
                (tr.dense(mid)[1] < 0.0 ? lo : hi) = mid;
            }
            return 0.5 * (lo + hi);
        }
    }
    FAIL("no return found");
    return 0.0;
}

}  // namespace

TEST_CASE("default constants follow the three regimes") {
    CHECK(default_constant(1.0) == 10.0);
    CHECK(default_constant(-0.5) == 0.1);
    CHECK(default_constant(-1.25) == -10.0);
}

TEST_CASE("small-amplitude period") {
    const double limit = 2.0 * pi / std::sqrt(6.0);
    CHECK(period_at(1.0, 3.0, 1e-6) == doctest::Approx(limit).epsilon(1e-5));
    const double V0 = potential(1.0, 1.0, 3.0);
    CHECK(2.0 * half_period(1.0, 3.0, V0 + 0.1) == doctest::Approx(limit).epsilon(0.02));
}

TEST_CASE("quadrature agrees with the flow") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> frac(0.05, 0.9);
    const std::array<std::pair<double, double>, 4> bc{{{1.0, 3.0}, {2.0, 7.0}, {-0.5, 0.1}, {-1.25, -10.0}}};
    for (int i = 0; i < 20; ++i) {
        const auto [b, c] = bc[static_cast<std::size_t>(i % 4)];
        const double E = energy_at(b, c, frac(rng));
        CAPTURE(b);
        CHECK(flow_period(b, c, E) == doctest::Approx(2.0 * half_period(b, c, E)).epsilon(1e-6));
    }
}

TEST_CASE("turning points and the no-orbit signal") {
    const double E = energy_at(1.0, 3.0, 0.5);
    const auto tp = turning_points(1.0, 3.0, E);
    REQUIRE(tp);
    CHECK(potential(tp->m, 1.0, 3.0) == doctest::Approx(E).epsilon(1e-12));
    CHECK(potential(tp->M, 1.0, 3.0) == doctest::Approx(E).epsilon(1e-12));
    CHECK(tp->m < 1.0);
    CHECK(tp->M > 1.0);
    CHECK_FALSE(turning_points(1.0, 3.0, potential(1.0, 1.0, 3.0) - 0.1));
    CHECK_THROWS_AS(half_period(1.0, -1.0, 0.0), LabError);
}

TEST_CASE("orbits with a prescribed period") {
    SUBCASE("a = 2 at c = 9") {
        SearchBox box;
        box.c = 9.0;
        const auto o = find_orbit_with_period(2.0, 2.0 * pi / 3.0, box);
        CHECK(o.period == doctest::Approx(2.0 * pi / 3.0).epsilon(1e-10));
        CHECK(o.M > o.m);
        CHECK(o.residual < 1e-6);
        const auto [lo, hi] = std::minmax_element(o.F.begin(), o.F.end());
        CHECK(std::abs(*lo - o.m) < 1e-8);
        CHECK(std::abs(*hi - o.M) < 1e-8);
        int changes = 0;
        for (std::size_t i = 0; i < o.P.size(); ++i) {
            const double p0 = o.P[i], p1 = o.P[(i + 1) % o.P.size()];
            if (p0 != 0.0 && p1 != 0.0 && std::signbit(p0) != std::signbit(p1)) ++changes;
            if (p0 == 0.0) ++changes;
        }
        CHECK(changes == 2);
    }
    SUBCASE("a = 2 at c = 3 cannot reach 2 pi / 3") {
        SearchBox box;
        box.c = 3.0;
        try {
            find_orbit_with_period(2.0, 2.0 * pi / 3.0, box);
            FAIL("expected a bracketing error");
        } catch (const LabError& e) {
            CHECK(e.kind() == ErrorKind::bracketing);
            CHECK(std::string(e.what()).find("attained range") != std::string::npos);
        }
    }
    SUBCASE("the other two regimes") {
        for (auto [a, T] : {std::pair{-1.0, 0.46}, std::pair{0.2, 1.4}}) {
            const auto o = find_orbit_with_period(a, T);
            CHECK(o.M > o.m);
            CHECK(o.residual < 1e-6);
            CHECK(o.closure_defect < 1e-9);
        }
    }
    SUBCASE("rigidity window") {
        try {
            find_orbit_with_period(0.75, 1.0);
            FAIL("expected refusal");
        } catch (const LabError& e) {
            CHECK(e.kind() == ErrorKind::unreachable);
            CHECK(std::string(e.what()) == "rigidity window: constants only");
        }
    }
}

TEST_CASE("rigidity scan") {
    RigidityGrid grid;
    grid.c_steps = 9;
    grid.e_steps = 9;
    grid.q_steps = 241;
    for (double a : {0.6, 0.75, 0.9}) {
        const auto v = rigidity_scan(a, grid);
        CHECK(v.rigid);
        CHECK(v.message == "rigid: constants only");
        CHECK(v.cells == 19u * 19u);
    }
    CHECK(rigidity_scan(0.5).rigid);
    CHECK(rigidity_scan(1.0).rigid);
    CHECK_THROWS_AS(rigidity_scan(2.0), LabError);
    // the same scan outside the window does find wells
    const auto cells = kernels::rigidity_cells_serial(1.0, grid);
    int bounded = 0;
    for (const auto& c : cells) bounded += c.bounded_components;
    CHECK(bounded > 0);
}

TEST_CASE("constant profiles") {
    const auto o = constant_profile(2.0, 4.0, pi);
    CHECK(o.is_constant());
    CHECK(o.F.front() == doctest::Approx(4.0));
    CHECK(o.residual == 0.0);
}
