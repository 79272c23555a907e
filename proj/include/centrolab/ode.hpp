#pragma once

// Dormand-Prince 5(4) with PI step control and continuous output.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace centrolab {

template <std::size_t N>
using OdeState = std::array<double, N>;

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double initial_step = 0.0;  // 0: automatic
    double max_step = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 5'000'000;
    bool keep_dense = false;
};

template <std::size_t N>
struct DenseSegment {
    double t0 = 0.0;
    double h = 0.0;
    std::array<OdeState<N>, 5> r{};

    OdeState<N> operator()(double t) const {
        const double s = (t - t0) / h;
        const double s1 = 1.0 - s;
        OdeState<N> y;
        for (std::size_t i = 0; i < N; ++i)
            y[i] = r[0][i] + s * (r[1][i] + s1 * (r[2][i] + s * (r[3][i] + s1 * r[4][i])));
        return y;
    }
};

template <std::size_t N>
class DenseSolution {
public:
    std::vector<DenseSegment<N>> segments;

    double t_begin() const { return segments.front().t0; }
    double t_end() const { return segments.back().t0 + segments.back().h; }

    OdeState<N> operator()(double t) const {
        auto it = std::upper_bound(segments.begin(), segments.end(), t,
                                   [](double v, const DenseSegment<N>& s) { return v < s.t0; });
        if (it != segments.begin()) --it;
        return (*it)(t);
    }
};

template <std::size_t N>
struct OdeResult {
    bool ok = true;
    double t = 0.0;
    OdeState<N> y{};
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::optional<double> domain_event;  // time at which the admissibility guard fired
    std::string message;
    DenseSolution<N> dense;
};

namespace detail {
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;
}  // namespace detail

/// Integrates y' = f(t, y) from t0 to t1 (t1 > t0). `admissible` is checked on
/// every stage; a failing stage shrinks the step, and if the step collapses
/// the run stops with a domain event at the last accepted time.
template <std::size_t N, class F, class Admissible>
OdeResult<N> dopri5(F&& f, double t0, OdeState<N> y0, double t1, const OdeOptions& opt,
                    Admissible&& admissible) {
    using namespace detail;
    using S = OdeState<N>;
    OdeResult<N> res;
    res.t = t0;
    res.y = y0;
    if (!(t1 > t0)) return res;

    auto axpy = [](const S& y, double h, std::initializer_list<std::pair<double, const S*>> terms) {
        S out = y;
        for (const auto& [c, k] : terms)
            for (std::size_t i = 0; i < N; ++i) out[i] += h * c * (*k)[i];
        return out;
    };
    auto sk = [&](double a, double b) { return opt.atol + opt.rtol * std::max(std::abs(a), std::abs(b)); };

    S k1 = f(t0, y0), k2, k3, k4, k5, k6, k7;
    double h = opt.initial_step;
    if (h <= 0.0) {
        double dnf = 0.0, dny = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double s = sk(y0[i], y0[i]);
            dnf += (k1[i] / s) * (k1[i] / s);
            dny += (y0[i] / s) * (y0[i] / s);
        }
        h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
        h = std::min({h, opt.max_step, t1 - t0});
        const S y1 = axpy(y0, h, {{1.0, &k1}});
        if (admissible(y1)) {
            const S f1 = f(t0 + h, y1);
            double der2 = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                const double s = sk(y0[i], y0[i]);
                der2 += ((f1[i] - k1[i]) / s) * ((f1[i] - k1[i]) / s);
            }
            der2 = std::sqrt(der2) / h;
            const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
            const double h1 = der12 <= 1e-15 ? std::max(1e-6, std::abs(h) * 1e-3) : std::pow(0.01 / der12, 0.2);
            h = std::min({100.0 * h, h1, opt.max_step, t1 - t0});
        }
    }

    constexpr double beta = 0.04, safe = 0.9, facc1 = 1.0 / 0.2, facc2 = 1.0 / 10.0;
    const double expo1 = 0.2 - beta * 0.75;
    double facold = 1e-4;
    bool last_rejected = false;
    double t = t0;
    S y = y0;
    std::size_t steps = 0;

    while (t < t1) {
        if (++steps > opt.max_steps) {
            res.ok = false;
            res.message = "step budget exhausted";
            break;
        }
        bool final_step = false;
        if (t + h >= t1 || t + 1.01 * h >= t1) {
            h = t1 - t;
            final_step = true;
        }
        if (h <= 1e-14 * std::max(1.0, std::abs(t))) {
            res.ok = false;
            res.domain_event = t;
            res.message = "step size underflow";
            break;
        }
        bool inside = true;
        S y2 = axpy(y, h, {{a21, &k1}});
        inside = inside && admissible(y2);
        if (inside) k2 = f(t + c2 * h, y2);
        S y3 = inside ? axpy(y, h, {{a31, &k1}, {a32, &k2}}) : y;
        inside = inside && admissible(y3);
        if (inside) k3 = f(t + c3 * h, y3);
        S y4 = inside ? axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}) : y;
        inside = inside && admissible(y4);
        if (inside) k4 = f(t + c4 * h, y4);
        S y5 = inside ? axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}) : y;
        inside = inside && admissible(y5);
        if (inside) k5 = f(t + c5 * h, y5);
        S y6 = inside ? axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}) : y;
        inside = inside && admissible(y6);
        if (inside) k6 = f(t + h, y6);
        S yn = inside ? axpy(y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}}) : y;
        inside = inside && admissible(yn);
        if (!inside) {
            ++res.rejected;
            h *= 0.25;
            last_rejected = true;
            continue;
        }
        k7 = f(t + h, yn);
        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double s = sk(y[i], yn[i]);
            err += (e / s) * (e / s);
        }
        err = std::sqrt(err / static_cast<double>(N));
        if (!std::isfinite(err)) {
            ++res.rejected;
            h *= 0.25;
            last_rejected = true;
            continue;
        }
        const double fac11 = std::pow(err, expo1);
        if (err <= 1.0) {
            double fac = fac11 / std::pow(facold, beta);
            fac = std::max(facc2, std::min(facc1, fac / safe));
            double hnew = std::min(h / fac, opt.max_step);
            if (last_rejected) hnew = std::min(hnew, h);
            facold = std::max(err, 1e-4);
            if (opt.keep_dense) {
                DenseSegment<N> seg;
                seg.t0 = t;
                seg.h = h;
                for (std::size_t i = 0; i < N; ++i) {
                    const double ydiff = yn[i] - y[i];
                    const double bspl = h * k1[i] - ydiff;
                    seg.r[0][i] = y[i];
                    seg.r[1][i] = ydiff;
                    seg.r[2][i] = bspl;
                    seg.r[3][i] = ydiff - h * k7[i] - bspl;
                    seg.r[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                                       d7 * k7[i]);
                }
                res.dense.segments.push_back(seg);
            }
            t = final_step ? t1 : t + h;
            y = yn;
            k1 = k7;
            ++res.accepted;
            last_rejected = false;
            h = hnew;
        } else {
            h /= std::min(facc1, fac11 / safe);
            ++res.rejected;
            last_rejected = true;
        }
    }
    res.t = t;
    res.y = y;
    return res;
}

template <std::size_t N, class F>
OdeResult<N> dopri5(F&& f, double t0, OdeState<N> y0, double t1, const OdeOptions& opt = {}) {
    return dopri5<N>(std::forward<F>(f), t0, y0, t1, opt, [](const OdeState<N>&) { return true; });
}

}  // namespace centrolab
