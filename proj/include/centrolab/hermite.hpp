#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace centrolab {

/// Periodic quintic Hermite interpolant from values and first two derivatives
/// on a uniform grid of n points covering [0, period).
class PeriodicQuinticHermite {
public:
    PeriodicQuinticHermite() = default;
    PeriodicQuinticHermite(std::vector<double> f, std::vector<double> df, std::vector<double> ddf, double period)
        : f_(std::move(f)), d1_(std::move(df)), d2_(std::move(ddf)), period_(period),
          h_(period / static_cast<double>(f_.size())) {}

    double period() const { return period_; }
    std::size_t size() const { return f_.size(); }

    struct Jet {
        double value, d1, d2;
    };

    Jet eval(double t) const {
        const std::size_t n = f_.size();
        double s = std::fmod(t, period_);
        if (s < 0) s += period_;
        double cell = std::floor(s / h_);
        std::size_t i = static_cast<std::size_t>(cell);
        if (i >= n) i = n - 1;
        const std::size_t j = (i + 1) % n;
        const double x = s / h_ - static_cast<double>(i);
        const double h = h_;
        const double p0 = f_[i], p1 = f_[j];
        const double v0 = d1_[i] * h, v1 = d1_[j] * h;
        const double a0 = d2_[i] * h * h, a1 = d2_[j] * h * h;
        // basis on [0,1]
        const double x2 = x * x, x3 = x2 * x, x4 = x3 * x, x5 = x4 * x;
        const double H0 = 1 - 10 * x3 + 15 * x4 - 6 * x5;
        const double H1 = x - 6 * x3 + 8 * x4 - 3 * x5;
        const double H2 = 0.5 * x2 - 1.5 * x3 + 1.5 * x4 - 0.5 * x5;
        const double H5 = 10 * x3 - 15 * x4 + 6 * x5;
        const double H4 = -4 * x3 + 7 * x4 - 3 * x5;
        const double H3 = 0.5 * x3 - x4 + 0.5 * x5;
        const double dH0 = -30 * x2 + 60 * x3 - 30 * x4;
        const double dH1 = 1 - 18 * x2 + 32 * x3 - 15 * x4;
        const double dH2 = x - 4.5 * x2 + 6 * x3 - 2.5 * x4;
        const double dH5 = -dH0;
        const double dH4 = -12 * x2 + 28 * x3 - 15 * x4;
        const double dH3 = 1.5 * x2 - 4 * x3 + 2.5 * x4;
        const double ddH0 = -60 * x + 180 * x2 - 120 * x3;
        const double ddH1 = -36 * x + 96 * x2 - 60 * x3;
        const double ddH2 = 1 - 9 * x + 18 * x2 - 10 * x3;
        const double ddH5 = -ddH0;
        const double ddH4 = -24 * x + 84 * x2 - 60 * x3;
        const double ddH3 = 3 * x - 12 * x2 + 10 * x3;
        Jet jet;
        jet.value = p0 * H0 + v0 * H1 + a0 * H2 + a1 * H3 + v1 * H4 + p1 * H5;
        jet.d1 = (p0 * dH0 + v0 * dH1 + a0 * dH2 + a1 * dH3 + v1 * dH4 + p1 * dH5) / h;
        jet.d2 = (p0 * ddH0 + v0 * ddH1 + a0 * ddH2 + a1 * ddH3 + v1 * ddH4 + p1 * ddH5) / (h * h);
        return jet;
    }

private:
    std::vector<double> f_, d1_, d2_;
    double period_ = 1.0;
    double h_ = 1.0;
};

}  // namespace centrolab
