#include "centrolab/deformation.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "centrolab/error.hpp"
#include "centrolab/spectral.hpp"

namespace centrolab {

std::vector<PeriodicFunction> trivial_basis(int n, bool include_translations) {
    if (n < 1) throw LabError(ErrorKind::invalid_input, "covering must be positive");
    std::vector<PeriodicFunction> out{
        {"1", [](double) { return 1.0; }},
        {"cos 2t", [](double t) { return std::cos(2.0 * t); }},
        {"sin 2t", [](double t) { return std::sin(2.0 * t); }},
    };
    if (include_translations) {
        out.push_back({"cos t", [](double t) { return std::cos(t); }});
        out.push_back({"sin t", [](double t) { return std::sin(t); }});
    }
    return out;
}

std::vector<double> linearized_curvature(std::span<const double> f, double period) {
    const auto d1 = spectral_derivative(f, period, 1);
    const auto d3 = spectral_derivative(f, period, 3);
    std::vector<double> q(f.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = 2.0 * d1[i] + 0.5 * d3[i];
    return q;
}

SpectrumValue spectrum_exponent(int k, int n) {
    if (k < 1 || n < 1) throw LabError(ErrorKind::invalid_input, "k and n must be positive");
    if (k == 2 * n) throw LabError(ErrorKind::pole, "k = 2n is a pole of the spectrum");
    const std::int64_t kk = static_cast<std::int64_t>(k) * k;
    const std::int64_t nn = static_cast<std::int64_t>(n) * n;
    SpectrumValue v;
    v.a = Rational(kk - 2 * nn, kk - 4 * nn);
    v.trivial = (k == n);
    return v;
}

namespace {

std::optional<std::int64_t> exact_sqrt(std::int64_t x) {
    if (x < 0) return std::nullopt;
    auto r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(x))));
    for (std::int64_t c = std::max<std::int64_t>(0, r - 2); c <= r + 2; ++c)
        if (c * c == x) return c;
    return std::nullopt;
}

int sign128(__int128 x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// sign of h_k at rational a = N/D (D > 0), k an integer
int hessian_sign(Rational a, int k) {
    const __int128 N = a.numerator();
    const __int128 D = a.denominator();
    const __int128 kk = static_cast<__int128>(k) * k;
    return sign128(kk - 4) * sign128((N - D) * kk - 2 * (2 * N - D));
}

}  // namespace

std::optional<SpectrumHit> spectrum_hit(Rational a) {
    if (a == Rational(1)) return std::nullopt;
    const Rational x = (Rational(4) * a - Rational(2)) / (a - Rational(1));
    if (x <= Rational(0)) return std::nullopt;
    const auto k = exact_sqrt(x.numerator());
    const auto n = exact_sqrt(x.denominator());
    if (!k || !n || *k == 2 * *n) return std::nullopt;
    return SpectrumHit{static_cast<int>(*k), static_cast<int>(*n)};
}

double linearized_frequency(double a) {
    const double b = 1.0 / (a - 1.0);
    return std::sqrt(2.0 * (b + 2.0));
}

Rational hessian_coefficient(Rational a, Rational k) {
    const Rational k2 = k * k;
    return (k2 - Rational(4)) * ((a - Rational(1)) * k2 - Rational(2) * (Rational(2) * a - Rational(1))) / Rational(8);
}

double hessian_coefficient(double a, double k) {
    const double k2 = k * k;
    return (k2 - 4.0) * ((a - 1.0) * k2 - 2.0 * (2.0 * a - 1.0)) / 8.0;
}

const char* to_string(CircleClass c) {
    switch (c) {
        case CircleClass::local_min: return "local-min";
        case CircleClass::local_max: return "local-max";
        case CircleClass::indefinite: return "indefinite";
        case CircleClass::degenerate: return "degenerate";
    }
    return "?";
}

Classification classify_circle(Rational a, int K) {
    if (a == Rational(0)) throw LabError(ErrorKind::invalid_input, "a = 0 is not admissible");
    Classification out;
    const int sa = a > Rational(0) ? 1 : -1;
    bool pos = false, neg = false;
    for (int k = 1; k <= K; ++k) {
        if (k == 2) continue;
        const int s = sa * hessian_sign(a, k);
        if (s == 0) out.kernel.push_back(k);
        if (s > 0) pos = true;
        if (s < 0) neg = true;
    }
    if (!out.kernel.empty()) {
        out.kind = CircleClass::degenerate;
    } else if (pos && !neg) {
        out.kind = CircleClass::local_min;
    } else if (neg && !pos) {
        out.kind = CircleClass::local_max;
    } else {
        out.kind = CircleClass::indefinite;
    }
    return out;
}

DeformationReport deformation_report(Rational a, int n, int K) {
    if (n < 1) throw LabError(ErrorKind::invalid_input, "covering must be positive");
    DeformationReport r;
    r.a = a;
    r.n = n;
    for (int k = 1; k <= K; ++k) {
        if (k == 2 * n) continue;
        if (spectrum_exponent(k, n).a == a) r.spectrum_hits.push_back(k);
        r.hessian_coeffs[k] = hessian_coefficient(a, Rational(k, n));
    }
    r.classification = classify_circle(a, K);
    return r;
}

double second_variation_third(std::span<const double> f, double period) {
    const auto d1 = spectral_derivative(f, period, 1);
    const auto d2 = spectral_derivative(f, period, 2);
    const auto d3 = spectral_derivative(f, period, 3);
    std::vector<double> g(f.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = 4.0 * d1[i] * d1[i] - 5.0 * d2[i] * d2[i] + d3[i] * d3[i];
    return periodic_trapezoid(g, period);
}

double second_variation(std::span<const double> f, double a, double period) {
    const auto d1 = spectral_derivative(f, period, 1);
    const auto d2 = spectral_derivative(f, period, 2);
    const auto d3 = spectral_derivative(f, period, 3);
    std::vector<double> g(f.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] = (2.0 * a - 1.0) * d1[i] * d1[i] - (4.0 * a - 3.0) / 4.0 * d2[i] * d2[i] +
               (a - 1.0) / 8.0 * d3[i] * d3[i];
    return a * periodic_trapezoid(g, period);
}

DeformationGenerator deformation_generator(Rational a, int k, int n) {
    const auto sv = spectrum_exponent(k, n);
    if (sv.a != a) throw LabError(ErrorKind::off_spectrum, "a is not the spectrum value for this harmonic");
    DeformationGenerator g;
    g.omega = static_cast<double>(k) / n;
    g.period = 2.0 * std::numbers::pi * n;
    g.gain = 0.5 * g.omega * g.omega * g.omega - 2.0 * g.omega;
    g.trivial = sv.trivial;
    const double w = g.omega;
    g.cos_part = {"cos(" + std::to_string(k) + "t/" + std::to_string(n) + ")", [w](double t) { return std::cos(w * t); }};
    g.sin_part = {"sin(" + std::to_string(k) + "t/" + std::to_string(n) + ")", [w](double t) { return std::sin(w * t); }};
    return g;
}

ParametricCurve deformed_circle(const FunctionJet3& f, double eps) {
    return [f, eps](double t) {
        const Vec2 g(std::cos(t), std::sin(t));
        const Vec2 gp(-std::sin(t), std::cos(t));
        const double f0 = f.f(t), f1 = f.d1(t), f2 = f.d2(t), f3 = f.d3(t);
        // p = 1 on the unit circle
        const Vec2 v = -0.5 * f1 * g + f0 * gp;
        const Vec2 vp = -(0.5 * f2 + f0) * g + 0.5 * f1 * gp;
        const Vec2 vpp = -(0.5 * f3 + 1.5 * f1) * g - f0 * gp;
        return CurveJet{g + eps * v, gp + eps * vp, -g + eps * vpp};
    };
}

double deformed_circle_functional(const FunctionJet3& f, double eps, double a, std::size_t samples) {
    const auto curve = reparameterize_centroaffine(deformed_circle(f, eps), 2.0 * std::numbers::pi, samples);
    const double area = curve.period();
    return functional_B(curve, a) * std::pow(2.0 * std::numbers::pi / area, 1.0 - 2.0 * a);
}

FunctionJet3 harmonic_jet(double k, bool sine, double amplitude) {
    if (sine)
        return {[=](double t) { return amplitude * std::sin(k * t); },
                [=](double t) { return amplitude * k * std::cos(k * t); },
                [=](double t) { return -amplitude * k * k * std::sin(k * t); },
                [=](double t) { return -amplitude * k * k * k * std::cos(k * t); }};
    return {[=](double t) { return amplitude * std::cos(k * t); },
            [=](double t) { return -amplitude * k * std::sin(k * t); },
            [=](double t) { return -amplitude * k * k * std::cos(k * t); },
            [=](double t) { return amplitude * k * k * k * std::sin(k * t); }};
}

}  // namespace centrolab
