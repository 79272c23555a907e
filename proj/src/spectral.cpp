#include "centrolab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "centrolab/error.hpp"

namespace centrolab {

namespace {

std::vector<std::complex<double>> forward(std::span<const double> values) {
    Eigen::FFT<double> fft;
    std::vector<double> in(values.begin(), values.end());
    std::vector<std::complex<double>> out;
    fft.fwd(out, in);
    return out;
}

}  // namespace

std::vector<double> spectral_derivative(std::span<const double> values, double period, int order,
                                        double noise_floor) {
    const std::size_t n = values.size();
    if (n < 4) throw LabError(ErrorKind::invalid_input, "spectral differentiation needs at least 4 samples");
    if (order < 0) throw LabError(ErrorKind::invalid_input, "negative derivative order");
    auto coeffs = forward(values);
    double largest = 0.0;
    for (std::size_t k = 1; k < n; ++k) largest = std::max(largest, std::abs(coeffs[k]));
    const double cut = noise_floor * std::max(largest, std::abs(coeffs[0]));
    const double base = 2.0 * std::numbers::pi / period;
    const std::complex<double> i_unit(0.0, 1.0);
    for (std::size_t k = 0; k < n; ++k) {
        const long signed_k = (k <= n / 2) ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
        if (std::abs(coeffs[k]) < cut || (n % 2 == 0 && k == n / 2 && order % 2 == 1)) {
            coeffs[k] = 0.0;
            continue;
        }
        coeffs[k] *= std::pow(i_unit * (base * static_cast<double>(signed_k)), order);
    }
    Eigen::FFT<double> fft;
    std::vector<double> out;
    fft.inv(out, coeffs);
    return out;
}

Antiderivative periodic_antiderivative(std::span<const double> values, double period) {
    const std::size_t n = values.size();
    auto coeffs = forward(values);
    Antiderivative out;
    out.mean = coeffs[0].real() / static_cast<double>(n);
    const double base = 2.0 * std::numbers::pi / period;
    for (std::size_t k = 0; k < n; ++k) {
        const long signed_k = (k <= n / 2) ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
        if (k == 0 || (n % 2 == 0 && k == n / 2)) {
            coeffs[k] = 0.0;
            continue;
        }
        coeffs[k] /= std::complex<double>(0.0, base * static_cast<double>(signed_k));
    }
    Eigen::FFT<double> fft;
    fft.inv(out.periodic, coeffs);
    const double shift = out.periodic.front();
    for (double& v : out.periodic) v -= shift;
    return out;
}

std::vector<double> fd4_derivative(std::span<const double> values, double period, int order) {
    const std::size_t n = values.size();
    if (n < 5) throw LabError(ErrorKind::invalid_input, "finite differences need at least 5 samples");
    const double h = period / static_cast<double>(n);
    std::vector<double> out(n);
    auto at = [&](std::size_t i, long shift) {
        return values[(i + n + static_cast<std::size_t>(shift + static_cast<long>(n))) % n];
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (order == 1) {
            out[i] = (-at(i, 2) + 8.0 * at(i, 1) - 8.0 * at(i, -1) + at(i, -2)) / (12.0 * h);
        } else if (order == 2) {
            out[i] = (-at(i, 2) + 16.0 * at(i, 1) - 30.0 * at(i, 0) + 16.0 * at(i, -1) - at(i, -2)) /
                     (12.0 * h * h);
        } else {
            throw LabError(ErrorKind::invalid_input, "fd4_derivative supports orders 1 and 2");
        }
    }
    return out;
}

double periodic_trapezoid(std::span<const double> values, double period) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum * period / static_cast<double>(values.size());
}

TrigInterpolant::TrigInterpolant(std::span<const double> values, double period)
    : period_(period), size_(values.size()) {
    if (size_ < 3) throw LabError(ErrorKind::invalid_input, "interpolant needs at least 3 samples");
    const auto coeffs = forward(values);
    const double n = static_cast<double>(size_);
    mean_ = coeffs[0].real() / n;
    const std::size_t kmax = size_ / 2;
    cos_.assign(kmax, 0.0);
    sin_.assign(kmax, 0.0);
    for (std::size_t k = 1; k <= kmax; ++k) {
        const bool nyquist = (size_ % 2 == 0 && k == kmax);
        const double scale = nyquist ? 1.0 / n : 2.0 / n;
        cos_[k - 1] = scale * coeffs[k].real();
        sin_[k - 1] = nyquist ? 0.0 : -scale * coeffs[k].imag();
    }
}

TrigInterpolant::Jet TrigInterpolant::eval(double t) const {
    const double w = 2.0 * std::numbers::pi / period_;
    Jet jet{mean_, 0.0, 0.0};
    // rotate (cos kx, sin kx) incrementally
    const double c1 = std::cos(w * t);
    const double s1 = std::sin(w * t);
    double ck = 1.0, sk = 0.0;
    for (std::size_t k = 1; k <= cos_.size(); ++k) {
        const double cn = ck * c1 - sk * s1;
        sk = sk * c1 + ck * s1;
        ck = cn;
        const double kw = w * static_cast<double>(k);
        const double a = cos_[k - 1];
        const double b = sin_[k - 1];
        jet.value += a * ck + b * sk;
        jet.d1 += kw * (-a * sk + b * ck);
        jet.d2 += -kw * kw * (a * ck + b * sk);
    }
    return jet;
}

const GaussLegendre& gauss_legendre(std::size_t n) {
    static std::mutex guard;
    static std::map<std::size_t, GaussLegendre> cache;
    std::lock_guard lock(guard);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    // Golub-Welsch: eigenvalues of the Jacobi matrix
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 1; k < n; ++k) {
        const double kk = static_cast<double>(k);
        const double beta = kk / std::sqrt(4.0 * kk * kk - 1.0);
        jacobi(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = beta;
        jacobi(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k)) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    GaussLegendre rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto idx = static_cast<Eigen::Index>(i);
        double x = solver.eigenvalues()(idx);
        // polish the node with Newton on P_n
        for (int it2 = 0; it2 < 3; ++it2) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double kk = static_cast<double>(k);
                const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
                p0 = p1;
                p1 = p2;
            }
            const double dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            x -= p1 / dp;
        }
        double p0 = 1.0, p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const double kk = static_cast<double>(k);
            const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
            p0 = p1;
            p1 = p2;
        }
        const double dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

}  // namespace centrolab
