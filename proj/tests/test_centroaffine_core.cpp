#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "centrolab/curve.hpp"
#include "centrolab/error.hpp"
#include "centrolab/io.hpp"
#include "centrolab/rational.hpp"

using namespace centrolab;
using std::numbers::pi;

namespace {

// circle of radius r about (cx, cy), traversed with the polar angle
ParametricCurve circle(double r, double cx, double cy, double dir = 1.0) {
    return [=](double s) {
        const double c = std::cos(dir * s), sn = std::sin(dir * s);
        return CurveJet{Vec2(cx + r * c, cy + r * sn), Vec2(-r * dir * sn, r * dir * c), Vec2(-r * c, -r * sn)};
    };
}

std::vector<Vec2> polyline(const ParametricCurve& c, std::size_t n) {
    std::vector<Vec2> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(c(2.0 * pi * static_cast<double>(i) / static_cast<double>(n)).g);
    return pts;
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const LabError& e) {
        return e.kind();
    }
    FAIL("expected a LabError");
    return ErrorKind::invalid_input;
}

}  // namespace

TEST_CASE("bracket examples and antisymmetry") {
    CHECK(bracket(Vec2(1, 0), Vec2(0, 1)) == 1.0);
    CHECK(bracket(Vec2(0, 1), Vec2(1, 0)) == -1.0);
    CHECK(bracket(Vec2(2, 3), Vec2(4, 6)) == 0.0);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (int i = 0; i < 100; ++i) {
        const Vec2 u(g(rng), g(rng)), v(g(rng), g(rng)), w(g(rng), g(rng));
        const double s = g(rng);
        CHECK(bracket(u, v) == doctest::Approx(-bracket(v, u)).epsilon(1e-15));
        CHECK(std::abs(bracket(u + s * w, v) - bracket(u, v) - s * bracket(w, v)) < 1e-9);
    }
}

TEST_CASE("n-fold circles") {
    for (int n = 1; n <= 3; ++n) {
        const auto c = multiple_circle(n);
        CHECK(c.normalization_defect() < 1e-9);
        CHECK(std::abs(functional_A(c) - 2.0 * pi) < 1e-10);
        CHECK(functional_B(c, 2.0) == doctest::Approx(2.0 * pi * std::pow(n, 4)).epsilon(1e-10));
        const auto p = estimate_curvature(c);
        for (double v : p.values) CHECK(std::abs(v - n * n) < 1e-6);
    }
    CHECK(functional_B(multiple_circle(2), 2.0) == doctest::Approx(32.0 * pi).epsilon(1e-12));
    CHECK(functional_B(multiple_circle(1), 1.0 / 3.0) == doctest::Approx(2.0 * pi).epsilon(1e-12));
    CHECK(kind_of([] { functional_B(multiple_circle(1), 0.0); }) == ErrorKind::invalid_input);
}

TEST_CASE("centroaffine reparameterization of conics") {
    SUBCASE("circle of radius r") {
        const double r = 1.7;
        const auto c = reparameterize_centroaffine(circle(r, 0, 0), 2.0 * pi, 1024);
        CHECK(c.period() == doctest::Approx(2.0 * pi * r * r).epsilon(1e-12));
        CHECK(c.normalization_defect() < 1e-7);
        for (double v : estimate_curvature(c).values) CHECK(v == doctest::Approx(1.0 / std::pow(r, 4)).epsilon(1e-7));
    }
    SUBCASE("ellipse with semi-axes 2 and 1") {
        const ParametricCurve e = [](double s) {
            return CurveJet{Vec2(2 * std::cos(s), std::sin(s)), Vec2(-2 * std::sin(s), std::cos(s)),
                            Vec2(-2 * std::cos(s), -std::sin(s))};
        };
        const auto c = reparameterize_centroaffine(e, 2.0 * pi, 1024, Differentiation::spectral);
        CHECK(c.period() == doctest::Approx(4.0 * pi).epsilon(1e-12));
        for (double v : estimate_curvature(c).values) CHECK(v == doctest::Approx(0.25).epsilon(1e-8));
    }
    SUBCASE("polyline input") {
        const auto c = reparameterize_centroaffine(polyline(circle(1.0, 0, 0), 512), 1024);
        CHECK(c.period() == doctest::Approx(2.0 * pi).epsilon(1e-10));
        CHECK(functional_A(c) == doctest::Approx(c.period()).epsilon(1e-9));
    }
}

TEST_CASE("reparameterization rejects bad input") {
    CHECK(kind_of([] { reparameterize_centroaffine(circle(1.0, 0, 0, -1.0), 2.0 * pi, 256); }) ==
          ErrorKind::wrong_orientation);
    try {
        reparameterize_centroaffine(circle(1.0, 3.0, 0.0), 2.0 * pi, 256);
        FAIL("expected not star-shaped");
    } catch (const LabError& e) {
        CHECK(e.kind() == ErrorKind::not_star_shaped);
        CHECK(e.location().has_value());
    }
    // star-shaped but not convex
    const ParametricCurve flower = [](double s) {
        const double r = 1.0 + 0.5 * std::cos(3 * s), dr = -1.5 * std::sin(3 * s), ddr = -4.5 * std::cos(3 * s);
        const double c = std::cos(s), sn = std::sin(s);
        return CurveJet{Vec2(r * c, r * sn), Vec2(dr * c - r * sn, dr * sn + r * c),
                        Vec2(ddr * c - 2 * dr * sn - r * c, ddr * sn + 2 * dr * c - r * sn)};
    };
    CHECK(kind_of([&] { reparameterize_centroaffine(flower, 2.0 * pi, 512); }) == ErrorKind::convexity_violation);
}

TEST_CASE("constructor invariants") {
    std::vector<PlanarSample> open;
    for (int i = 0; i <= 64; ++i) {
        const double t = 2.0 * pi * i / 64.0 * 0.9;
        open.push_back({t * 2.0 * pi / (2.0 * pi * 0.9), std::cos(t), std::sin(t)});
    }
    CHECK(kind_of([&] { CentroaffineCurve(open, 2.0 * pi); }) == ErrorKind::not_closed);
    std::vector<PlanarSample> big;
    for (int i = 0; i <= 256; ++i) {
        const double t = 2.0 * pi * i / 256.0;
        big.push_back({t, 2.0 * std::cos(t), 2.0 * std::sin(t)});
    }
    CHECK(kind_of([&] { CentroaffineCurve(big, 2.0 * pi); }) == ErrorKind::normalization);
}

TEST_CASE("SL(2) invariance of B") {
    const auto c = reparameterize_centroaffine(polyline(circle(1.0, 0.3, -0.2), 1024), 2048, Differentiation::spectral);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 5; ++i) {
        Eigen::Matrix2d s;
        s << 1.0 + u(rng), u(rng), u(rng), 1.0 + u(rng);
        if (std::abs(s.determinant()) < 0.2) continue;
        s /= std::sqrt(std::abs(s.determinant()));
        if (s.determinant() < 0) s.col(0) *= -1.0;
        const auto t = c.transformed(s);
        for (double a : {2.0, -1.0, 1.0 / 3.0}) CHECK(functional_B(t, a) == doctest::Approx(functional_B(c, a)).epsilon(1e-9));
    }
    Eigen::Matrix2d bad = 2.0 * Eigen::Matrix2d::Identity();
    CHECK(kind_of([&] { c.transformed(bad); }) == ErrorKind::invalid_input);
}

TEST_CASE("translation changes B except at a = 1/3") {
    const auto base = multiple_circle(1);
    const auto moved = reparameterize_centroaffine(circle(1.0, 0.12, -0.07), 2.0 * pi, 2048, Differentiation::spectral);
    CHECK(moved.period() == doctest::Approx(2.0 * pi).epsilon(1e-12));
    CHECK(functional_B(moved, 1.0 / 3.0) == doctest::Approx(functional_B(base, 1.0 / 3.0)).epsilon(1e-9));
    CHECK(std::abs(functional_B(moved, 2.0) - functional_B(base, 2.0)) > 1e-3);
}

TEST_CASE("curve exchange round trip") {
    const auto c = reparameterize_centroaffine(polyline(circle(1.0, 0.2, 0.1), 400), 512);
    const auto j = io::Json::parse(io::to_json(c).dump());
    const auto back = io::curve_from_json(j);
    REQUIRE(back.samples().size() == c.samples().size());
    double worst = 0.0;
    for (std::size_t i = 0; i < c.samples().size(); ++i)
        worst = std::max({worst, std::abs(back.samples()[i].x - c.samples()[i].x),
                          std::abs(back.samples()[i].y - c.samples()[i].y),
                          std::abs(back.samples()[i].t - c.samples()[i].t)});
    CHECK(worst <= 1e-12);
    const auto csv = io::curve_from_csv(io::to_csv(c));
    worst = 0.0;
    for (std::size_t i = 0; i < c.samples().size(); ++i)
        worst = std::max(worst, std::abs(csv.samples()[i].x - c.samples()[i].x));
    CHECK(worst <= 1e-12);
    CHECK(kind_of([] { io::curve_from_json(io::Json{{"period", 1.0}}); }) == ErrorKind::invalid_input);
    CHECK(kind_of([] { io::curve_from_csv("a,b\n1,2\n"); }) == ErrorKind::invalid_input);
}

TEST_CASE("exact rationals") {
    CHECK(parse_rational("1.4") == Rational(7, 5));
    CHECK(parse_rational("-3/7") == Rational(-3, 7));
    CHECK(parse_rational(" 0.2 ") == Rational(1, 5));
    CHECK(kind_of([] { parse_rational("abc"); }) == ErrorKind::invalid_input);
    CHECK(kind_of([] { parse_rational("1/0"); }) == ErrorKind::invalid_input);
    CHECK(approximate_rational(0.4285714285714286, 100, 1e-12) == Rational(3, 7));
    CHECK(to_string(ExtendedRational::inf()) == "inf");
}
