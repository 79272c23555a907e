#include <cmath>
#include <numbers>

#include "doctest.h"

#include "centrolab/error.hpp"
#include "centrolab/extremal_ode.hpp"
#include "centrolab/ode.hpp"
#include "centrolab/spectral.hpp"

using namespace centrolab;
using std::numbers::pi;

TEST_CASE("exponent data") {
    CHECK(exponent_data(2.0).b == 1.0);
    CHECK(exponent_data(1.0 / 3.0).b == doctest::Approx(-1.5).epsilon(1e-15));
    const auto half = exponent_data(0.5);
    CHECK(half.b == -2.0);
    CHECK(half.constants_only);
    CHECK(half.note == "F'''=0, only constants");
    for (double a : {-3.0, -0.5, 0.2, 0.7, 1.5, 4.0}) CHECK(exponent_data(a).b * (a - 1.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(exponent_data(0.0), LabError);
    try {
        exponent_data(1.0);
        FAIL("a = 1 accepted");
    } catch (const LabError& e) {
        CHECK(e.kind() == ErrorKind::conic_degenerate);
        CHECK(std::string(e.what()).size() > 0);
    }
}

TEST_CASE("hamiltonian and its field") {
    CHECK(hamiltonian({1.0, 0.0}, 1.0, 3.0) == doctest::Approx(-2.0));
    CHECK(hamiltonian({1.0, 0.0}, 1.0, 0.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(hamiltonian({0.0, 1.0}, 1.0, 0.0), LabError);
    CHECK_THROWS_AS(hamiltonian({1.0, 1.0}, -1.0, 0.0), LabError);
    auto [dq, dp] = hamiltonian_vector_field({1.0, 0.0}, 1.0, 3.0);
    CHECK(dq == 0.0);
    CHECK(dp == doctest::Approx(0.0));
    std::tie(dq, dp) = hamiltonian_vector_field({1.0, 2.0}, 1.0, 0.0);
    CHECK(dq == 2.0);
    CHECK(dp == doctest::Approx(-3.0));
    // the field is (dH/dP, -dH/dQ)
    const double b = -0.5, c = 0.3, h = 1e-6;
    const PhasePoint x{0.7, 0.2};
    std::tie(dq, dp) = hamiltonian_vector_field(x, b, c);
    CHECK(dp == doctest::Approx(-(hamiltonian({x.Q + h, x.P}, b, c) - hamiltonian({x.Q - h, x.P}, b, c)) / (2 * h)).epsilon(1e-7));
}

TEST_CASE("critical points") {
    auto cp = critical_point(1.0, 3.0);
    REQUIRE(cp);
    CHECK(cp->point.Q == doctest::Approx(1.0));
    CHECK(cp->is_minimum);
    cp = critical_point(-1.5, -4.0);
    REQUIRE(cp);
    CHECK(cp->point.Q == doctest::Approx(0.25));
    CHECK(cp->is_minimum);
    CHECK_FALSE(critical_point(1.0, -1.0));
    // inside the rigidity window the only critical point is a maximum
    cp = critical_point(-4.0, 1.0);
    REQUIRE(cp);
    CHECK_FALSE(cp->is_minimum);
}

TEST_CASE("dopri5 on the harmonic oscillator") {
    OdeOptions opt;
    opt.rtol = 1e-12;
    opt.atol = 1e-14;
    opt.keep_dense = true;
    const auto r = dopri5<2>([](double, const OdeState<2>& y) { return OdeState<2>{y[1], -y[0]}; }, 0.0, {1.0, 0.0},
                             10.0, opt);
    REQUIRE(r.ok);
    CHECK(r.y[0] == doctest::Approx(std::cos(10.0)).epsilon(1e-10));
    CHECK(r.dense(3.3)[0] == doctest::Approx(std::cos(3.3)).epsilon(1e-8));
    const auto blocked = dopri5<1>([](double, const OdeState<1>&) { return OdeState<1>{-1.0}; }, 0.0, {1.0}, 5.0,
                                   OdeOptions{}, [](const OdeState<1>& y) { return y[0] > 0.0; });
    CHECK_FALSE(blocked.ok);
    REQUIRE(blocked.domain_event);
    CHECK(*blocked.domain_event == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("flow conserves energy and the first integral") {
    struct Case {
        double b, c;
        PhasePoint start;
    };
    for (const auto& k : {Case{1.0, 3.0, {1.1, 0.0}}, Case{2.0, 5.0, {1.0, 0.3}}, Case{-0.5, 0.1, {3e-4, 0.0}},
                          Case{-1.5, -4.0, {0.3, 0.0}}}) {
        CAPTURE(k.b);
        const auto tr = integrate_flow(k.start, k.b, k.c, 100.0, 4000);
        CHECK_FALSE(tr.positivity_lost_at);
        CHECK(tr.energy_drift < 1e-9);
        CHECK(first_order_residual(tr) < 1e-8);
        CHECK(tr.points.size() == 4001);
    }
    // 50 linear periods around the well at Q = 1
    const auto near = integrate_flow({1.1, 0.0}, 1.0, 3.0, 50.0 * 2.0 * pi / std::sqrt(6.0), 2000);
    CHECK(near.energy_drift < 1e-10);
    const auto still = integrate_flow({1.0, 0.0}, 1.0, 3.0, 10.0, 10);
    for (const auto& s : still.points) CHECK(s.Q == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(integrate_flow({1.0, 0.0}, -2.0, 1.0, 1.0), LabError);
}

TEST_CASE("positivity loss is reported") {
    // b = -1/2, c = 0: F'' = -6 sqrt(F) drives F to zero
    const auto tr = integrate_flow({1.0, 0.0}, -0.5, 0.0, 10.0, 100);
    REQUIRE(tr.positivity_lost_at);
    CHECK(*tr.positivity_lost_at > 0.0);
    CHECK(*tr.positivity_lost_at < 10.0);
}

TEST_CASE("third-order residual") {
    const std::size_t n = 256;
    std::vector<double> F(n, 1.0);
    CHECK(residual_third_order(F, 2.0 * pi, 2.0) == 0.0);
    for (std::size_t i = 0; i < n; ++i) F[i] = 1.0 + 0.1 * std::sin(2.0 * pi * static_cast<double>(i) / n);
    CHECK(residual_third_order(F, 2.0 * pi, 2.0) > 0.1);
}
