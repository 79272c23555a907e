#include "centrolab/hill.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "centrolab/error.hpp"
#include "centrolab/roots.hpp"
#include "centrolab/spectral.hpp"

namespace centrolab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

ProfileFn profile_function(const ProfileOrbit& orbit) {
    const double b = orbit.exponent.b;
    if (orbit.is_constant()) {
        const double p0 = std::pow(orbit.m, b);
        return [p0](double) { return ProfileJet{p0, 0.0, 0.0}; };
    }
    auto h = orbit.interpolant();
    return [h, b](double t) {
        const auto j = h.eval(t);
        const double fb1 = std::pow(j.value, b - 1.0);
        const double p = fb1 * j.value;
        const double dp = b * fb1 * j.d1;
        const double ddp = b * (b - 1.0) * fb1 / j.value * j.d1 * j.d1 + b * fb1 * j.d2;
        return ProfileJet{p, dp, ddp};
    };
}

const char* to_string(MonodromyType t) {
    switch (t) {
        case MonodromyType::elliptic: return "elliptic";
        case MonodromyType::parabolic: return "parabolic";
        case MonodromyType::hyperbolic: return "hyperbolic";
    }
    return "?";
}

double Monodromy::winding_fraction() const { return total_rotation / kTwoPi; }

Monodromy monodromy(const ProfileFn& p, double period, OdeOptions options) {
    if (!(period > 0.0)) throw LabError(ErrorKind::invalid_input, "period must be positive");
    auto rhs = [&](double t, const OdeState<5>& y) {
        const double pv = p(t).p;
        return OdeState<5>{y[1], -pv * y[0], y[3], -pv * y[2], 1.0 / (y[0] * y[0] + y[2] * y[2])};
    };
    options.keep_dense = false;
    const auto res = dopri5<5>(rhs, 0.0, {1.0, 0.0, 0.0, 1.0, 0.0}, period, options);
    if (!res.ok) throw LabError(ErrorKind::integration_failure, "Hill integration failed: " + res.message);
    Monodromy m;
    m.matrix << res.y[0], res.y[2], res.y[1], res.y[3];
    m.trace = m.matrix.trace();
    m.determinant = m.matrix.determinant();
    const double angle = res.y[4];
    const double excess = std::abs(m.trace) - 2.0;
    if (std::abs(excess) <= 1e-9) {
        m.type = MonodromyType::parabolic;
    } else if (excess < 0.0) {
        m.type = MonodromyType::elliptic;
    } else {
        m.type = MonodromyType::hyperbolic;
    }
    if (m.type == MonodromyType::parabolic) {
        // acos is ill-conditioned at trace +-2; the rotation is a multiple of pi
        m.total_rotation = std::numbers::pi * std::round(angle / std::numbers::pi);
        m.rotation_angle = std::fmod(m.total_rotation, kTwoPi);
        if (*m.rotation_angle < 0.0) *m.rotation_angle += kTwoPi;
    } else if (m.type == MonodromyType::elliptic) {
        const double base = std::acos(std::clamp(0.5 * m.trace, -1.0, 1.0));
        double theta = m.matrix(0, 1) >= 0.0 ? base : kTwoPi - base;
        if (theta >= kTwoPi) theta -= kTwoPi;
        m.rotation_angle = theta;
        m.total_rotation = theta + kTwoPi * std::round((angle - theta) / kTwoPi);
    } else {
        m.total_rotation = std::numbers::pi * std::round(angle / std::numbers::pi);
    }
    return m;
}

Monodromy monodromy(const ProfileOrbit& orbit, OdeOptions options) {
    return monodromy(profile_function(orbit), orbit.period, options);
}

namespace {

double fraction_at(double a, double b, double c, double s, std::size_t samples) {
    const auto orbit = sample_orbit(a, c, energy_at(b, c, s), samples);
    return monodromy(orbit).winding_fraction();
}

}  // namespace

RotationRange rotation_range(double a, const RotationBox& box) {
    const auto e = exponent_data(a);
    if (a >= 0.5 && a <= 1.0) throw LabError(ErrorKind::unreachable, "rigidity window: constants only");
    RotationRange r;
    r.c = box.c.value_or(default_constant(e.b));
    r.lo = std::numeric_limits<double>::infinity();
    r.hi = -r.lo;
    for (std::size_t i = 0; i < box.scan; ++i) {
        const double s = box.s_lo + (box.s_hi - box.s_lo) * static_cast<double>(i) / static_cast<double>(box.scan - 1);
        const double f = fraction_at(a, e.b, r.c, s, box.samples);
        r.lo = std::min(r.lo, f);
        r.hi = std::max(r.hi, f);
    }
    return r;
}

ProfileOrbit rotation_tune(double a, Rational target, const RotationBox& box) {
    const auto e = exponent_data(a);
    if (a >= 0.5 && a <= 1.0) throw LabError(ErrorKind::unreachable, "rigidity window: constants only");
    if (target <= Rational(0)) throw LabError(ErrorKind::invalid_input, "rotation target must be positive");
    const double b = e.b;
    const double c = box.c.value_or(default_constant(b));
    const double goal = to_double(target);
    auto f = [&](double s) { return fraction_at(a, b, c, s, box.samples) - goal; };
    std::vector<double> ss(box.scan), vals(box.scan);
    for (std::size_t i = 0; i < box.scan; ++i) {
        ss[i] = box.s_lo + (box.s_hi - box.s_lo) * static_cast<double>(i) / static_cast<double>(box.scan - 1);
        vals[i] = f(ss[i]);
    }
    for (std::size_t i = 0; i + 1 < box.scan; ++i) {
        if (vals[i] == 0.0 || std::signbit(vals[i]) != std::signbit(vals[i + 1])) {
            const auto s = bracketed_root(f, ss[i], ss[i + 1], 1e-15);
            if (!s) break;
            return sample_orbit(a, c, energy_at(b, c, *s), box.samples);
        }
    }
    const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
    std::ostringstream msg;
    msg.precision(10);
    msg << "rotation target " << to_string(target) << " unreachable; attained range [" << *lo + goal << ", "
        << *hi + goal << "] at c=" << c;
    throw LabError(ErrorKind::unreachable, msg.str());
}

HillFlow integrate_hill(const ProfileFn& p, double duration, Vec2 g0, Vec2 g1, OdeOptions options) {
    auto rhs = [&](double t, const OdeState<4>& y) {
        const double pv = p(t).p;
        return OdeState<4>{y[2], y[3], -pv * y[0], -pv * y[1]};
    };
    options.keep_dense = true;
    auto res = dopri5<4>(rhs, 0.0, {g0.x(), g0.y(), g1.x(), g1.y()}, duration, options);
    HillFlow flow;
    flow.ok = res.ok;
    flow.dense = std::move(res.dense);
    const double w0 = bracket(g0, g1);
    for (const auto& seg : flow.dense.segments) {
        const auto& y = seg.r[0];
        flow.wronskian_defect = std::max(flow.wronskian_defect, std::abs(y[0] * y[3] - y[1] * y[2] - w0));
    }
    const auto& y = res.y;
    flow.wronskian_defect = std::max(flow.wronskian_defect, std::abs(y[0] * y[3] - y[1] * y[2] - w0));
    return flow;
}

namespace {

std::vector<double> profile_vertices(const ProfileOrbit& orbit) {
    std::vector<double> out;
    if (orbit.is_constant()) return out;
    const auto h = orbit.interpolant();
    const std::size_t n = orbit.P.size();
    const double dt = orbit.period / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = orbit.P[i];
        const double b = orbit.P[(i + 1) % n];
        const double t0 = dt * static_cast<double>(i);
        if (a == 0.0) {
            out.push_back(t0);
        } else if (b != 0.0 && std::signbit(a) != std::signbit(b)) {
            auto r = bracketed_root([&](double t) { return h.eval(t).d1; }, t0, t0 + dt, 1e-15);
            if (r) out.push_back(*r);
        }
    }
    return out;
}

}  // namespace

ClosedExtremalCurve reconstruct(const ProfileOrbit& orbit, int covering, const InitialFrame& frame,
                                std::size_t samples, double tol_close) {
    if (covering < 1) throw LabError(ErrorKind::invalid_input, "covering must be at least 1");
    const auto p = profile_function(orbit);
    const double total = orbit.period * covering;
    const double x0 = std::pow(p(0.0).p, -0.25);
    const Vec2 g0 = frame.g0.value_or(Vec2(x0, 0.0));
    const Vec2 g1 = frame.g1.value_or(Vec2(0.0, 1.0 / g0.x()));
    if (std::abs(bracket(g0, g1) - 1.0) > 1e-12)
        throw LabError(ErrorKind::normalization, "initial frame must satisfy [g, g'] = 1");
    const auto flow = integrate_hill(p, total, g0, g1);
    if (!flow.ok) throw LabError(ErrorKind::integration_failure, "Hill integration failed");

    const double turns = std::max(1.0, std::round(total / kTwoPi));
    const double sigma2 = kTwoPi * turns / total;
    const double sigma = std::sqrt(sigma2);
    const double period = kTwoPi * turns;
    if (samples == 0) samples = std::max<std::size_t>(2048, 512 * static_cast<std::size_t>(covering));

    const auto end = flow.dense(total);
    const double defect = sigma * std::hypot(end[0] - g0.x(), end[1] - g0.y()) +
                          std::hypot(end[2] - g1.x(), end[3] - g1.y()) / sigma;
    if (defect > tol_close) {
        std::ostringstream msg;
        msg << "closure defect " << defect << " after " << covering << " periods";
        throw LabError(ErrorKind::closure_defect, msg.str(), defect);
    }

    std::vector<PlanarSample> pts(samples + 1);
    std::vector<Vec2> d1(samples), d2(samples);
    double angle = 0.0;
    Vec2 prev(g0);
    for (std::size_t i = 0; i < samples; ++i) {
        const double tt = period * static_cast<double>(i) / static_cast<double>(samples);
        const double t = tt / sigma2;
        const auto y = i == 0 ? OdeState<4>{g0.x(), g0.y(), g1.x(), g1.y()} : flow.dense(t);
        const Vec2 g(sigma * y[0], sigma * y[1]);
        pts[i] = {tt, g.x(), g.y()};
        d1[i] = Vec2(y[2], y[3]) / sigma;
        d2[i] = -p(t).p * Vec2(y[0], y[1]) / (sigma2 * sigma);
        if (i > 0) angle += std::atan2(bracket(prev, g), prev.dot(g));
        prev = g;
    }
    pts[samples] = {period, pts[0].x, pts[0].y};
    angle += std::atan2(bracket(prev, Vec2(pts[0].x, pts[0].y)), prev.dot(Vec2(pts[0].x, pts[0].y)));

    ClosedExtremalCurve out{CentroaffineCurve(std::move(pts), period, std::make_pair(std::move(d1), std::move(d2))),
                            orbit};
    out.covering = covering;
    out.scale = sigma;
    out.closure_defect = defect;
    out.wronskian_defect = flow.wronskian_defect;
    out.winding = static_cast<int>(std::lround(angle / kTwoPi));
    out.rotation_number = Rational(out.winding, covering);
    // rescaled profile on the orbit's own nodes: p~ = p / sigma^4, F~ = p~^(a-1)
    const double a = orbit.exponent.a;
    const double b = orbit.exponent.b;
    std::vector<double> Ft;
    Ft.reserve(orbit.F.size() * static_cast<std::size_t>(covering));
    for (int k = 0; k < covering; ++k)
        for (double F : orbit.F) Ft.push_back(std::pow(std::pow(F, b) / (sigma2 * sigma2), a - 1.0));
    out.residual = residual_third_order(Ft, period, a);
    for (int k = 0; k < covering; ++k)
        for (double t : profile_vertices(orbit)) out.vertices.push_back((t + k * orbit.period) * sigma2);
    return out;
}

VertexReport vertices_and_osculants(const ClosedExtremalCurve& c) {
    VertexReport rep;
    if (c.orbit.is_constant()) {
        rep.constant_profile = true;
        rep.distinct_values.push_back(estimate_curvature(c.curve).values.front());
        return rep;
    }
    const auto p = profile_function(c.orbit);
    const double sigma2 = c.scale * c.scale;
    std::vector<double> xs(c.curve.size()), ys(c.curve.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = c.curve.points()[i].x();
        ys[i] = c.curve.points()[i].y();
    }
    TrigInterpolant ix(xs, c.curve.period()), iy(ys, c.curve.period());
    for (double tt : c.vertices) {
        const double t = tt / sigma2;
        const auto jet = p(std::fmod(t, c.orbit.period));
        Vertex v;
        v.t = tt;
        v.p = jet.p / (sigma2 * sigma2);
        v.is_max = jet.ddp < 0.0;
        const auto jx = ix.eval(tt), jy = iy.eval(tt);
        const double w = std::sqrt(v.p);
        Eigen::Matrix2d A;
        A << jx.value, jx.d1 / w, jy.value, jy.d1 / w;
        const Eigen::Matrix2d G = A * A.transpose();
        v.conic = G.inverse();
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(G);
        v.semi_minor = std::sqrt(es.eigenvalues()(0));
        v.semi_major = std::sqrt(es.eigenvalues()(1));
        rep.vertices.push_back(v);
        bool seen = false;
        for (double d : rep.distinct_values)
            if (std::abs(d - v.p) <= 1e-6 * std::max(1.0, std::abs(d))) seen = true;
        if (!seen) rep.distinct_values.push_back(v.p);
    }
    return rep;
}

}  // namespace centrolab
