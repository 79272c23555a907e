#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace centrolab {

/// Derivative of a uniformly sampled periodic function by discrete Fourier
/// differentiation. Samples are the N distinct grid values over one period
/// (no duplicated endpoint). Modes below `noise_floor` times the largest
/// coefficient are discarded before differentiating, which keeps third
/// derivatives of smooth data from amplifying round-off.
std::vector<double> spectral_derivative(std::span<const double> values, double period, int order,
                                        double noise_floor = 1e-14);

/// Periodic part of an antiderivative: returns P with P' = f - mean(f) and
/// P(0) = 0, together with the mean.
struct Antiderivative {
    std::vector<double> periodic;
    double mean = 0.0;
};
Antiderivative periodic_antiderivative(std::span<const double> values, double period);

/// Fourth-order central differences on a periodic uniform grid (order 1 or 2).
std::vector<double> fd4_derivative(std::span<const double> values, double period, int order);

/// Trapezoidal rule on a periodic grid; spectrally accurate for smooth data.
double periodic_trapezoid(std::span<const double> values, double period);

/// Trigonometric interpolant of a uniformly sampled periodic function.
class TrigInterpolant {
public:
    TrigInterpolant() = default;
    TrigInterpolant(std::span<const double> values, double period);

    double period() const { return period_; }
    std::size_t size() const { return size_; }

    /// Value and first two derivatives at t.
    struct Jet {
        double value, d1, d2;
    };
    Jet eval(double t) const;

private:
    double period_ = 1.0;
    std::size_t size_ = 0;
    double mean_ = 0.0;
    // cos/sin coefficients for harmonics 1..K (Nyquist folded in for even N)
    std::vector<double> cos_;
    std::vector<double> sin_;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(std::size_t n);

}  // namespace centrolab
