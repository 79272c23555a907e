#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "centrolab/deformation.hpp"
#include "centrolab/error.hpp"
#include "centrolab/kernels.hpp"

using namespace centrolab;
using std::numbers::pi;

namespace {

std::vector<double> sample(const std::function<double(double)>& f, double period, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = f(period * static_cast<double>(i) / static_cast<double>(n));
    return v;
}

// independent oracle: a = (k^2 - 2n^2)/(k^2 - 4n^2) in plain integers
Rational oracle(int k, int n) { return Rational(k * k - 2 * n * n, k * k - 4 * n * n); }

}  // namespace

TEST_CASE("spectrum values") {
    CHECK(spectrum_exponent(1, 1).a == Rational(1, 3));
    CHECK(spectrum_exponent(1, 1).trivial);
    CHECK(spectrum_exponent(3, 1).a == Rational(7, 5));
    CHECK(spectrum_exponent(4, 1).a == Rational(7, 6));
    CHECK(spectrum_exponent(5, 1).a == Rational(23, 21));
    CHECK(spectrum_exponent(6, 2).a == Rational(7, 5));
    for (int n = 1; n <= 6; ++n)
        for (int k = 1; k <= 30; ++k) {
            if (k == 2 * n) continue;
            CHECK(spectrum_exponent(k, n).a == oracle(k, n));
            CHECK(spectrum_exponent(k, n).trivial == (k == n));
        }
    try {
        spectrum_exponent(2, 1);
        FAIL("pole accepted");
    } catch (const LabError& e) {
        CHECK(e.kind() == ErrorKind::pole);
    }
}

TEST_CASE("spectrum membership") {
    auto hit = spectrum_hit(Rational(7, 5));
    REQUIRE(hit);
    CHECK(hit->k == 3);
    CHECK(hit->n == 1);
    hit = spectrum_hit(Rational(1, 3));
    REQUIRE(hit);
    CHECK(hit->k == 1);
    CHECK_FALSE(spectrum_hit(Rational(3, 4)));
    CHECK_FALSE(spectrum_hit(Rational(2)));
    // values accumulate at 1 from above: none inside [1/2, 1]
    for (int n = 1; n <= 10; ++n)
        for (int k = 1; k <= 60; ++k) {
            if (k == 2 * n) continue;
            const auto a = spectrum_exponent(k, n).a;
            CHECK_FALSE((a >= Rational(1, 2) && a <= Rational(1)));
        }
    CHECK(linearized_frequency(1.4) == doctest::Approx(3.0));
}

TEST_CASE("hessian coefficients and classification") {
    CHECK(hessian_coefficient(Rational(2), Rational(3)) == Rational(5 * (9 - 6), 8));
    CHECK(hessian_coefficient(2.0, 3.0) == doctest::Approx(15.0 / 8.0));
    CHECK(hessian_coefficient(Rational(7, 5), Rational(3)) == Rational(0));
    CHECK(hessian_coefficient(Rational(5), Rational(2)) == Rational(0));

    CHECK(classify_circle(Rational(-1)).kind == CircleClass::local_min);
    CHECK(classify_circle(Rational(1, 5)).kind == CircleClass::local_max);
    CHECK(classify_circle(Rational(2)).kind == CircleClass::local_min);
    CHECK(classify_circle(Rational(6, 5)).kind == CircleClass::indefinite);
    const auto deg = classify_circle(Rational(7, 5));
    CHECK(deg.kind == CircleClass::degenerate);
    CHECK(deg.kernel == std::vector<int>{3});
    const auto third = classify_circle(Rational(1, 3));
    CHECK(third.kind == CircleClass::degenerate);
    CHECK(third.kernel == std::vector<int>{1});

    // degenerate exactly on the spectrum with n = 1
    for (int k = 3; k <= 12; ++k) {
        const auto c = classify_circle(spectrum_exponent(k, 1).a);
        CHECK(c.kind == CircleClass::degenerate);
        CHECK(std::find(c.kernel.begin(), c.kernel.end(), k) != c.kernel.end());
    }
    const auto rep = deformation_report(Rational(7, 5), 2, 16);
    CHECK(std::find(rep.spectrum_hits.begin(), rep.spectrum_hits.end(), 6) != rep.spectrum_hits.end());
}

TEST_CASE("linearized curvature annihilates trivial deformations") {
    for (bool tr : {false, true}) {
        const auto basis = trivial_basis(1, tr);
        CHECK(basis.size() == (tr ? 5u : 3u));
        for (const auto& g : basis) {
            const auto q = linearized_curvature(sample(g.f, 2.0 * pi, 128), 2.0 * pi);
            double worst = 0.0;
            for (double x : q) worst = std::max(worst, std::abs(x));
            CAPTURE(g.label);
            if (g.label.find("cos t") == std::string::npos && g.label.find("sin t") == std::string::npos)
                CHECK(worst < 1e-10);
        }
    }
    // 2f' + f'''/2 on cos 3t is -6 sin 3t + 13.5 sin 3t
    const auto q = linearized_curvature(sample([](double t) { return std::cos(3.0 * t); }, 2.0 * pi, 128), 2.0 * pi);
    for (std::size_t i = 0; i < q.size(); i += 16) {
        const double t = 2.0 * pi * static_cast<double>(i) / 128.0;
        CHECK(q[i] == doctest::Approx(7.5 * std::sin(3.0 * t)).epsilon(1e-9));
    }
}

TEST_CASE("deformation generators") {
    const auto g = deformation_generator(Rational(7, 5), 3, 1);
    CHECK(g.omega == doctest::Approx(3.0));
    CHECK(g.period == doctest::Approx(2.0 * pi));
    CHECK_FALSE(g.trivial);
    CHECK(deformation_generator(Rational(1, 3), 1, 1).trivial);
    try {
        deformation_generator(Rational(2), 3, 1);
        FAIL("off-spectrum exponent accepted");
    } catch (const LabError& e) {
        CHECK(e.kind() == ErrorKind::off_spectrum);
    }
    CHECK_THROWS_AS(deformation_generator(Rational(7, 5), 2, 1), LabError);
}

TEST_CASE("second variation against a finite difference of B") {
    for (double a : {2.0, -1.0}) {
        for (double k : {3.0, 4.0}) {
            const auto f = harmonic_jet(k);
            const double eps = 2.5e-3;
            const double b0 = deformed_circle_functional(f, 0.0, a);
            const double fd =
                (deformed_circle_functional(f, eps, a) - 2.0 * b0 + deformed_circle_functional(f, -eps, a)) /
                (eps * eps);
            const double predicted = 2.0 * pi * a * k * k * hessian_coefficient(a, k);
            CAPTURE(a);
            CAPTURE(k);
            CHECK(fd == doctest::Approx(predicted).epsilon(0.02));
        }
    }
    CHECK(deformed_circle_functional(harmonic_jet(3.0), 0.0, 2.0) == doctest::Approx(2.0 * pi).epsilon(1e-8));
}

TEST_CASE("second variation quadrature") {
    // on sin kt the integral of the quadratic form is pi a (stuff), checked
    // against 2 pi a k^2 h_k / 2
    for (double a : {2.0, -1.0, 0.2}) {
        for (int k : {3, 5}) {
            const auto f = sample([k](double t) { return std::sin(k * t); }, 2.0 * pi, 256);
            const double got = second_variation(f, a);
            const double expect = pi * a * k * k * hessian_coefficient(a, static_cast<double>(k));
            CHECK(got == doctest::Approx(expect).epsilon(1e-9));
        }
    }
}

TEST_CASE("hessian sign table is identical serial and parallel") {
    std::vector<Rational> as;
    for (int i = -20; i <= 20; ++i) as.push_back(Rational(i, 7));
    CHECK(kernels::hessian_sign_table_serial(as, 40) == kernels::hessian_sign_table_parallel(as, 40));
}
