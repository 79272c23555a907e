#include "centrolab/extremal_ode.hpp"

#include <algorithm>
#include <cmath>

#include "centrolab/error.hpp"
#include "centrolab/spectral.hpp"

namespace centrolab {

ExponentData exponent_data(double a) {
    if (!std::isfinite(a)) throw LabError(ErrorKind::invalid_input, "exponent must be finite");
    if (a == 0.0) throw LabError(ErrorKind::invalid_input, "a = 0 is not admissible");
    if (a == 1.0) throw LabError(ErrorKind::conic_degenerate, to_string(ErrorKind::conic_degenerate));
    ExponentData e;
    e.a = a;
    e.b = 1.0 / (a - 1.0);
    if (a == 0.5) {
        e.constants_only = true;
        e.note = "F'''=0, only constants";
    }
    return e;
}

double potential(double Q, double b, double c) {
    return 2.0 / (b + 1.0) * std::pow(Q, b + 2.0) - c * Q;
}

double hamiltonian(PhasePoint x, double b, double c) {
    if (b == -1.0) throw LabError(ErrorKind::invalid_input, "b = -1 has no Hamiltonian");
    if (!(x.Q > 0.0)) throw LabError(ErrorKind::domain, "Q must be positive", x.Q);
    return 0.5 * x.P * x.P + potential(x.Q, b, c);
}

std::pair<double, double> hamiltonian_vector_field(PhasePoint x, double b, double c) {
    if (!(x.Q > 0.0)) throw LabError(ErrorKind::domain, "Q must be positive", x.Q);
    return {x.P, -2.0 * (b + 2.0) / (b + 1.0) * std::pow(x.Q, b + 1.0) + c};
}

std::optional<CriticalPoint> critical_point(double b, double c) {
    if (b == -1.0) throw LabError(ErrorKind::invalid_input, "b = -1 has no Hamiltonian");
    const double k = 2.0 * (b + 2.0) / (b + 1.0);
    if (k == 0.0) return std::nullopt;
    const double base = c / k;
    if (!(base > 0.0)) return std::nullopt;
    CriticalPoint cp;
    cp.point = {std::pow(base, 1.0 / (b + 1.0)), 0.0};
    cp.is_minimum = (b + 2.0) * std::pow(cp.point.Q, b) > 0.0;
    return cp;
}

Trajectory integrate_flow(PhasePoint start, double b, double c, double duration, std::size_t samples,
                          OdeOptions options) {
    if (b == -2.0) throw LabError(ErrorKind::conic_degenerate, "a = 1/2: only constant profiles");
    if (b == -1.0) throw LabError(ErrorKind::invalid_input, "b = -1 has no Hamiltonian");
    if (!(start.Q > 0.0)) throw LabError(ErrorKind::domain, "Q must be positive", start.Q);
    if (!(duration > 0.0) || samples < 1) throw LabError(ErrorKind::invalid_input, "bad duration or sample count");
    Trajectory tr;
    tr.b = b;
    tr.c = c;
    tr.d = start.P * start.P + 4.0 / (b + 1.0) * std::pow(start.Q, b + 2.0) - 2.0 * c * start.Q;
    const double k = 2.0 * (b + 2.0) / (b + 1.0);
    auto rhs = [&](double, const OdeState<2>& y) { return OdeState<2>{y[1], -k * std::pow(y[0], b + 1.0) + c}; };
    options.keep_dense = true;
    auto res = dopri5<2>(rhs, 0.0, {start.Q, start.P}, duration, options,
                         [](const OdeState<2>& y) { return y[0] > kProfileFloor; });
    const double h0 = hamiltonian(start, b, c);
    double t_end = res.t;
    if (!res.ok) {
        tr.positivity_lost_at = res.domain_event.value_or(res.t);
    }
    tr.dense = std::move(res.dense);
    tr.points.reserve(samples + 1);
    for (std::size_t i = 0; i <= samples; ++i) {
        const double t = duration * static_cast<double>(i) / static_cast<double>(samples);
        if (t > t_end) break;
        const auto y = (i == 0 || tr.dense.segments.empty()) ? OdeState<2>{start.Q, start.P} : tr.dense(t);
        tr.points.push_back({t, y[0], y[1]});
        if (y[0] > 0.0) tr.energy_drift = std::max(tr.energy_drift, std::abs(hamiltonian({y[0], y[1]}, b, c) - h0));
    }
    if (res.y[0] > 0.0)
        tr.energy_drift = std::max(tr.energy_drift, std::abs(hamiltonian({res.y[0], res.y[1]}, b, c) - h0));
    return tr;
}

double residual_third_order(std::span<const double> F, double period, double a) {
    const double b = 1.0 / (a - 1.0);
    const auto d1 = spectral_derivative(F, period, 1);
    const auto d3 = spectral_derivative(F, period, 3);
    double worst = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i)
        worst = std::max(worst, std::abs(d3[i] + 2.0 * (2.0 + b) * std::pow(F[i], b) * d1[i]));
    return worst;
}

double first_order_residual(const Trajectory& traj) {
    double worst = 0.0;
    for (const auto& s : traj.points) {
        const double r = s.P * s.P + 4.0 / (traj.b + 1.0) * std::pow(s.Q, traj.b + 2.0) - 2.0 * traj.c * s.Q - traj.d;
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

}  // namespace centrolab
