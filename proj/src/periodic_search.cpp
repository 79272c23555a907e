#include "centrolab/periodic_search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "centrolab/error.hpp"
#include "centrolab/kernels.hpp"
#include "centrolab/roots.hpp"
#include "centrolab/spectral.hpp"

namespace centrolab {

namespace {

// Sign changes of V - E on a log grid, refined.
std::vector<double> level_roots(double b, double c, double E, double lo, double hi, std::size_t steps) {
    std::vector<double> roots;
    auto g = [&](double logq) { return potential(std::exp(logq), b, c) - E; };
    double x0 = lo;
    double g0 = g(x0);
    for (std::size_t i = 1; i < steps; ++i) {
        const double x1 = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
        const double g1 = g(x1);
        if (g0 == 0.0) {
            roots.push_back(std::exp(x0));
        } else if (std::signbit(g0) != std::signbit(g1) && g1 != 0.0) {
            auto r = bracketed_root([&](double q) { return potential(q, b, c) - E; }, std::exp(x0), std::exp(x1),
                                    1e-15);
            if (r) roots.push_back(*r);
        }
        x0 = x1;
        g0 = g1;
    }
    return roots;
}

}  // namespace

std::optional<TurningPoints> turning_points(double b, double c, double E) {
    // V' is monotone, so a bounded component exists only around a minimum.
    const auto cp = critical_point(b, c);
    if (!cp || !cp->is_minimum) return std::nullopt;
    const double q0 = cp->point.Q;
    if (!(potential(q0, b, c) < E)) return std::nullopt;
    auto g = [&](double q) { return potential(q, b, c) - E; };
    double lo = q0;
    for (int i = 0; i < 2000 && g(lo) < 0.0; ++i) {
        lo *= 0.5;
        if (lo < 1e-300) return std::nullopt;
    }
    double hi = q0;
    for (int i = 0; i < 2000 && g(hi) < 0.0; ++i) {
        hi *= 2.0;
        if (hi > 1e300) return std::nullopt;
    }
    const auto m = bracketed_root(g, lo, q0, 1e-15);
    const auto M = bracketed_root(g, q0, hi, 1e-15);
    if (!m || !M) return std::nullopt;
    return TurningPoints{*m, *M};
}

double half_period(double b, double c, double E) {
    const auto tp = turning_points(b, c, E);
    if (!tp) throw LabError(ErrorKind::no_orbit, "no bounded positive component of the level set");
    const auto& gl = gauss_legendre(128);
    const double m = tp->m, M = tp->M;
    const double quarter = 0.25 * std::numbers::pi;
    double sum = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double th = quarter * (gl.nodes[i] + 1.0);
        const double s = std::sin(th), co = std::cos(th);
        const double Q = m + (M - m) * s * s;
        const double gap = E - potential(Q, b, c);
        if (!(gap > 0.0)) continue;
        sum += gl.weights[i] * 2.0 * (M - m) * s * co / std::sqrt(2.0 * gap);
    }
    return sum * quarter;
}

PeriodicQuinticHermite ProfileOrbit::interpolant() const {
    const double b = exponent.b;
    const double k = 2.0 * (b + 2.0) / (b + 1.0);
    std::vector<double> dd(F.size());
    for (std::size_t i = 0; i < F.size(); ++i) dd[i] = is_constant() ? 0.0 : -k * std::pow(F[i], b + 1.0) + c;
    return PeriodicQuinticHermite(F, P, dd, period);
}

ProfileOrbit constant_profile(double a, double p0, double period, std::size_t samples) {
    if (!(p0 > 0.0)) throw LabError(ErrorKind::domain, "profile must be positive");
    if (!(period > 0.0)) throw LabError(ErrorKind::invalid_input, "period must be positive");
    ProfileOrbit o;
    o.exponent = exponent_data(a);
    const double b = o.exponent.b;
    const double F0 = std::pow(p0, a - 1.0);
    o.c = 2.0 * (b + 2.0) / (b + 1.0) * std::pow(F0, b + 1.0);
    o.energy = potential(F0, b, o.c);
    o.d = 2.0 * o.energy;
    o.m = o.M = F0;
    o.period = period;
    o.F.assign(samples, F0);
    o.P.assign(samples, 0.0);
    return o;
}

double default_constant(double b) {
    if (b > 0.0) return 10.0;
    if (b > -1.0) return 0.1;
    if (b > -2.0) return -10.0;
    throw LabError(ErrorKind::unreachable, "rigidity window: constants only");
}

double energy_at(double b, double c, double s) {
    const auto cp = critical_point(b, c);
    if (!cp || !cp->is_minimum) throw LabError(ErrorKind::no_orbit, "potential has no well");
    const double v0 = potential(cp->point.Q, b, c);
    if (!(v0 < 0.0)) throw LabError(ErrorKind::no_orbit, "well does not lie below zero");
    return v0 * (1.0 - s);
}

double period_at(double b, double c, double s) { return 2.0 * half_period(b, c, energy_at(b, c, s)); }

ProfileOrbit sample_orbit(double a, double c, double E, std::size_t samples) {
    ProfileOrbit o;
    o.exponent = exponent_data(a);
    const double b = o.exponent.b;
    if (o.exponent.constants_only) throw LabError(ErrorKind::conic_degenerate, "a = 1/2: only constant profiles");
    const auto tp = turning_points(b, c, E);
    if (!tp) throw LabError(ErrorKind::no_orbit, "no bounded positive component of the level set");
    o.c = c;
    o.energy = E;
    o.d = 2.0 * E;
    o.m = tp->m;
    o.M = tp->M;
    o.period = 2.0 * half_period(b, c, E);
    OdeOptions opt;
    opt.rtol = 1e-13;
    opt.atol = 1e-15 * o.M;
    opt.max_step = o.period / 1024.0;
    // integrate half a period and mirror: F(T - t) = F(t), P(T - t) = -P(t)
    if (samples % 2 != 0) throw LabError(ErrorKind::invalid_input, "sample count must be even");
    const std::size_t half = samples / 2;
    const auto traj = integrate_flow({o.m, 0.0}, b, c, 0.5 * o.period, half, opt);
    if (traj.positivity_lost_at)
        throw LabError(ErrorKind::integration_failure, "profile positivity lost", *traj.positivity_lost_at);
    o.F.resize(samples);
    o.P.resize(samples);
    for (std::size_t i = 0; i <= half; ++i) {
        o.F[i] = traj.points[i].Q;
        o.P[i] = traj.points[i].P;
        if (i > 0 && i < half) {
            o.F[samples - i] = o.F[i];
            o.P[samples - i] = -o.P[i];
        }
    }
    o.P[half] = 0.0;
    const auto& end = traj.points.back();
    o.closure_defect = std::abs(end.Q - o.M) + std::abs(end.P);
    o.energy_drift = traj.energy_drift;
    o.residual = residual_third_order(o.F, o.period, a);
    return o;
}

ProfileOrbit find_orbit_with_period(double a, double target_period, const SearchBox& box) {
    const auto e = exponent_data(a);
    if (a >= 0.5 && a <= 1.0) throw LabError(ErrorKind::unreachable, "rigidity window: constants only");
    if (!(target_period > 0.0)) throw LabError(ErrorKind::invalid_input, "target period must be positive");
    const double b = e.b;
    const double c = box.c.value_or(default_constant(b));
    auto f = [&](double s) { return period_at(b, c, s) - target_period; };
    std::vector<double> ss(box.scan), vals(box.scan);
    for (std::size_t i = 0; i < box.scan; ++i) {
        ss[i] = box.s_lo + (box.s_hi - box.s_lo) * static_cast<double>(i) / static_cast<double>(box.scan - 1);
        vals[i] = f(ss[i]);
    }
    for (std::size_t i = 0; i + 1 < box.scan; ++i) {
        if (std::signbit(vals[i]) != std::signbit(vals[i + 1]) || vals[i] == 0.0) {
            const auto s = bracketed_root(f, ss[i], ss[i + 1], 1e-15);
            if (!s) break;
            return sample_orbit(a, c, energy_at(b, c, *s), box.samples);
        }
    }
    const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
    std::ostringstream msg;
    msg.precision(10);
    msg << "target period " << target_period << " not bracketed; attained range [" << *lo + target_period << ", "
        << *hi + target_period << "] at c=" << c;
    throw LabError(ErrorKind::bracketing, msg.str());
}

CellVerdict scan_cell(double b, double c, double E, const RigidityGrid& grid) {
    CellVerdict v;
    const auto roots = level_roots(b, c, E, grid.log_q_min * std::numbers::ln10, grid.log_q_max * std::numbers::ln10,
                                   grid.q_steps);
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
        const double mid = std::sqrt(roots[i] * roots[i + 1]);
        if (potential(mid, b, c) < E) ++v.bounded_components;
    }
    // F'' = -V'(F): a minimum needs V'(m) <= 0 and a maximum V'(M) >= 0, so a
    // decreasing V' forces m >= M.
    const double k = 2.0 * (b + 2.0) / (b + 1.0);
    double prev = 0.0;
    for (std::size_t i = 0; i < grid.q_steps; ++i) {
        const double lq = (grid.log_q_min + (grid.log_q_max - grid.log_q_min) * static_cast<double>(i) /
                                                static_cast<double>(grid.q_steps - 1)) *
                          std::numbers::ln10;
        const double dv = k * std::pow(std::exp(lq), b + 1.0) - c;
        if (i > 0 && dv > prev + 1e-12 * std::max(1.0, std::abs(prev))) v.concave = false;
        prev = dv;
    }
    return v;
}

RigidityVerdict rigidity_scan(double a, const RigidityGrid& grid, bool parallel) {
    RigidityVerdict out;
    if (a == 0.5 || a == 1.0) {
        out.rigid = true;
        out.message = "rigid: conic-degenerate exponent, p constant";
        return out;
    }
    if (!(a > 0.5 && a < 1.0))
        throw LabError(ErrorKind::invalid_input, "rigidity scan applies to a in (1/2, 1) only");
    const double b = 1.0 / (a - 1.0);
    const auto cells = parallel ? kernels::rigidity_cells_parallel(b, grid) : kernels::rigidity_cells_serial(b, grid);
    out.cells = cells.size();
    for (const auto& cv : cells) {
        if (cv.bounded_components > 0) ++out.bounded_cells;
        if (!cv.concave) ++out.nonconcave_cells;
    }
    out.rigid = out.bounded_cells == 0 && out.nonconcave_cells == 0;
    out.message = out.rigid ? "rigid: constants only" : "bounded level components found";
    return out;
}

}  // namespace centrolab
