#include "centrolab/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "centrolab/error.hpp"
#include "centrolab/ode.hpp"
#include "centrolab/spectral.hpp"

namespace centrolab {

namespace {

std::vector<Vec2> differentiate(const std::vector<Vec2>& pts, double period, int order, Differentiation method) {
    std::vector<double> xs(pts.size()), ys(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        xs[i] = pts[i].x();
        ys[i] = pts[i].y();
    }
    std::vector<double> dx, dy;
    if (method == Differentiation::spectral) {
        dx = spectral_derivative(xs, period, order);
        dy = spectral_derivative(ys, period, order);
    } else {
        dx = fd4_derivative(xs, period, order);
        dy = fd4_derivative(ys, period, order);
    }
    std::vector<Vec2> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = Vec2(dx[i], dy[i]);
    return out;
}

}  // namespace

CentroaffineCurve::CentroaffineCurve(std::vector<PlanarSample> samples, double period,
                                     std::optional<std::pair<std::vector<Vec2>, std::vector<Vec2>>> derivatives,
                                     Differentiation method, CurveTolerances tol)
    : samples_(std::move(samples)), period_(period), method_(method) {
    if (samples_.size() < 9) throw LabError(ErrorKind::invalid_input, "curve needs at least 9 samples");
    if (!(period_ > 0.0) || !std::isfinite(period_)) throw LabError(ErrorKind::invalid_input, "period must be positive");
    const std::size_t n = samples_.size() - 1;
    const double h = period_ / static_cast<double>(n);
    double scale = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        const auto& s = samples_[i];
        if (!std::isfinite(s.x) || !std::isfinite(s.y) || !std::isfinite(s.t))
            throw LabError(ErrorKind::invalid_input, "non-finite sample", s.t);
        const double expected = samples_[0].t + h * static_cast<double>(i);
        if (std::abs(s.t - expected) > tol.spacing * period_ + 1e-14)
            throw LabError(ErrorKind::invalid_input, "samples are not on a uniform grid", s.t);
        scale = std::max(scale, std::hypot(s.x, s.y));
    }
    const double gap = std::hypot(samples_[n].x - samples_[0].x, samples_[n].y - samples_[0].y);
    if (gap > tol.closure * std::max(1.0, scale))
        throw LabError(ErrorKind::not_closed, "first and last samples differ by " + std::to_string(gap));

    points_.resize(n);
    for (std::size_t i = 0; i < n; ++i) points_[i] = Vec2(samples_[i].x, samples_[i].y);
    if (derivatives) {
        auto& [a, b] = *derivatives;
        if (a.size() < n || b.size() < n) throw LabError(ErrorKind::invalid_input, "derivative samples too short");
        d1_.assign(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n));
        d2_.assign(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(n));
        stored_ = true;
    } else {
        d1_ = differentiate(points_, period_, 1, method_);
        d2_ = differentiate(points_, period_, 2, method_);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double w = bracket(points_[i], d1_[i]);
        if (std::abs(w - 1.0) > tol.norm)
            throw LabError(ErrorKind::normalization, "[g,g'] deviates from 1 by " + std::to_string(w - 1.0),
                           samples_[i].t);
        if (!(bracket(d1_[i], d2_[i]) > 0.0))
            throw LabError(ErrorKind::convexity_violation, "[g',g''] is not positive", samples_[i].t);
    }
}

double CentroaffineCurve::normalization_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i)
        worst = std::max(worst, std::abs(bracket(points_[i], d1_[i]) - 1.0));
    return worst;
}

CentroaffineCurve CentroaffineCurve::transformed(const Eigen::Matrix2d& s) const {
    if (std::abs(s.determinant() - 1.0) > 1e-12) throw LabError(ErrorKind::invalid_input, "matrix is not unimodular");
    std::vector<PlanarSample> out(samples_.size());
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        const Vec2 q = s * Vec2(samples_[i].x, samples_[i].y);
        out[i] = {samples_[i].t, q.x(), q.y()};
    }
    if (!stored_) return CentroaffineCurve(std::move(out), period_, std::nullopt, method_);
    std::vector<Vec2> a(d1_.size()), b(d2_.size());
    for (std::size_t i = 0; i < d1_.size(); ++i) {
        a[i] = s * d1_[i];
        b[i] = s * d2_[i];
    }
    return CentroaffineCurve(std::move(out), period_, std::make_pair(std::move(a), std::move(b)), method_);
}

double functional_A(const CentroaffineCurve& curve) {
    std::vector<double> w(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) w[i] = bracket(curve.points()[i], curve.first_derivative()[i]);
    return periodic_trapezoid(w, curve.period());
}

CurvatureProfile estimate_curvature(const CentroaffineCurve& curve) {
    CurvatureProfile prof;
    prof.period = curve.period();
    prof.values.resize(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const double p = bracket(curve.first_derivative()[i], curve.second_derivative()[i]);
        if (!(p > 0.0))
            throw LabError(ErrorKind::convexity_violation, "negative curvature estimate", curve.samples()[i].t);
        prof.values[i] = p;
    }
    return prof;
}

double functional_B(const CentroaffineCurve& curve, double a) {
    if (a == 0.0 || !std::isfinite(a)) throw LabError(ErrorKind::invalid_input, "exponent must be nonzero");
    std::vector<double> vals(curve.size());
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const double p = bracket(curve.first_derivative()[i], curve.second_derivative()[i]);
        if (!(p > 0.0))
            throw LabError(ErrorKind::convexity_violation, "p <= 0 at sample " + std::to_string(i),
                           static_cast<double>(i));
        vals[i] = std::pow(p, a);
    }
    return periodic_trapezoid(vals, curve.period());
}

CentroaffineCurve reparameterize_centroaffine(const ParametricCurve& curve, double length, std::size_t samples,
                                              Differentiation method) {
    if (samples < 8) throw LabError(ErrorKind::invalid_input, "too few samples");
    if (!(length > 0.0)) throw LabError(ErrorKind::invalid_input, "parameter length must be positive");
    auto w_of = [&](double s) {
        const auto j = curve(s);
        return bracket(j.g, j.gs);
    };
    const std::size_t probe = 8 * samples;
    std::size_t negatives = 0;
    std::optional<double> first_bad;
    for (std::size_t i = 0; i < probe; ++i) {
        const double s = length * static_cast<double>(i) / static_cast<double>(probe);
        const double w = w_of(s);
        if (!(w > 0.0)) {
            ++negatives;
            if (!first_bad) first_bad = s;
        }
    }
    if (negatives == probe) throw LabError(ErrorKind::wrong_orientation, "curve is negatively oriented");
    if (negatives > 0) throw LabError(ErrorKind::not_star_shaped, "[g, dg] changes sign", *first_bad);

    OdeOptions opt;
    opt.rtol = 1e-13;
    opt.atol = 1e-15;
    opt.max_step = length / 64.0;
    auto area = dopri5<1>([&](double s, const OdeState<1>&) { return OdeState<1>{w_of(s)}; }, 0.0, {0.0}, length, opt);
    const double period = area.y[0];

    opt.keep_dense = true;
    opt.max_step = period / 64.0;
    auto flow = dopri5<1>([&](double, const OdeState<1>& s) { return OdeState<1>{1.0 / w_of(s[0])}; }, 0.0, {0.0},
                          period, opt);
    if (!flow.ok) throw LabError(ErrorKind::integration_failure, "reparameterization flow failed: " + flow.message);

    std::vector<PlanarSample> pts(samples + 1);
    std::vector<Vec2> d1(samples), d2(samples);
    const double dt = period / static_cast<double>(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = dt * static_cast<double>(i);
        const double s = i == 0 ? 0.0 : flow.dense(t)[0];
        const auto j = curve(s);
        const double w = bracket(j.g, j.gs);
        const double ws = bracket(j.g, j.gss);
        const double sp = 1.0 / w;
        const double spp = -ws / (w * w * w);
        pts[i] = {t, j.g.x(), j.g.y()};
        d1[i] = j.gs * sp;
        d2[i] = j.gss * sp * sp + j.gs * spp;
    }
    pts[samples] = {period, pts[0].x, pts[0].y};
    return CentroaffineCurve(std::move(pts), period, std::make_pair(std::move(d1), std::move(d2)), method);
}

CentroaffineCurve reparameterize_centroaffine(const std::vector<Vec2>& polyline, std::size_t samples,
                                              Differentiation method) {
    std::vector<Vec2> pts = polyline;
    if (pts.size() >= 2 && (pts.front() - pts.back()).norm() <= 1e-12 * std::max(1.0, pts.front().norm()))
        pts.pop_back();
    if (pts.size() < 8) throw LabError(ErrorKind::invalid_input, "polyline needs at least 8 distinct points");
    std::vector<double> xs(pts.size()), ys(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        xs[i] = pts[i].x();
        ys[i] = pts[i].y();
    }
    const double len = 2.0 * std::numbers::pi;
    TrigInterpolant ix(xs, len), iy(ys, len);
    ParametricCurve f = [ix, iy](double s) {
        const auto a = ix.eval(s);
        const auto b = iy.eval(s);
        return CurveJet{Vec2(a.value, b.value), Vec2(a.d1, b.d1), Vec2(a.d2, b.d2)};
    };
    return reparameterize_centroaffine(f, len, samples, method);
}

CentroaffineCurve multiple_circle(int n, std::size_t samples) {
    if (n < 1) throw LabError(ErrorKind::invalid_input, "covering must be positive");
    const double r = 1.0 / std::sqrt(static_cast<double>(n));
    const double nn = static_cast<double>(n);
    const double period = 2.0 * std::numbers::pi;
    std::vector<PlanarSample> pts(samples + 1);
    std::vector<Vec2> d1(samples), d2(samples);
    for (std::size_t i = 0; i <= samples; ++i) {
        const double t = period * static_cast<double>(i) / static_cast<double>(samples);
        const double c = std::cos(nn * t), s = std::sin(nn * t);
        pts[i] = {t, r * c, r * s};
        if (i < samples) {
            d1[i] = Vec2(-r * nn * s, r * nn * c);
            d2[i] = Vec2(-r * nn * nn * c, -r * nn * nn * s);
        }
    }
    pts[samples].x = pts[0].x;
    pts[samples].y = pts[0].y;
    return CentroaffineCurve(std::move(pts), period, std::make_pair(std::move(d1), std::move(d2)));
}

AffineMeasures affine_measures(const std::vector<Vec2>& points, double period) {
    const auto d1 = differentiate(points, period, 1, Differentiation::spectral);
    const auto d2 = differentiate(points, period, 2, Differentiation::spectral);
    std::vector<double> w(points.size()), l(points.size());
    AffineMeasures m;
    m.min_convexity = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
        w[i] = 0.5 * bracket(points[i], d1[i]);
        const double k = bracket(d1[i], d2[i]);
        m.min_convexity = std::min(m.min_convexity, k);
        l[i] = std::cbrt(std::max(k, 0.0));
    }
    m.area = periodic_trapezoid(w, period);
    m.length = periodic_trapezoid(l, period);
    return m;
}

}  // namespace centrolab
