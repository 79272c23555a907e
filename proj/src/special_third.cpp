#include "centrolab/special_third.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "centrolab/error.hpp"
#include "centrolab/hill.hpp"
#include "centrolab/spectral.hpp"

namespace centrolab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double solve_phase(double eps, int n, double C, double t) {
    if (!(eps >= 0.0 && eps < 1.0)) throw LabError(ErrorKind::invalid_input, "eps must lie in [0, 1)");
    const double x = n * t + C;
    if (eps == 0.0) return x;
    double lo = x - eps, hi = x + eps;
    double phi = x;
    for (int it = 0; it < 100; ++it) {
        const double g = phi - eps * std::cos(phi) - x;
        if (g == 0.0) break;
        if (g > 0.0) hi = phi; else lo = phi;
        double next = phi - g / (1.0 + eps * std::sin(phi));
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - phi) <= 1e-16 * std::max(1.0, std::abs(phi))) {
            phi = next;
            break;
        }
        phi = next;
    }
    return phi;
}

std::vector<double> solve_phase(double eps, int n, double C, std::span<const double> grid) {
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = solve_phase(eps, n, C, grid[i]);
    return out;
}

ThirdCaseProfile third_profile(double eps, int n, double C, std::size_t samples) {
    if (n < 1) throw LabError(ErrorKind::invalid_input, "n must be positive");
    ThirdCaseProfile p;
    p.eps = eps;
    p.n = n;
    p.C = C;
    p.mu = std::pow(static_cast<double>(n), -2.0 / 3.0);
    p.c = -2.0 * p.mu * p.mu * n * n;
    p.d = 4.0 * std::pow(p.mu, 4) * n * n * (eps * eps - 1.0);
    p.period = kTwoPi;
    p.t.resize(samples);
    for (std::size_t i = 0; i < samples; ++i) p.t[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(samples);
    p.phi = solve_phase(eps, n, C, p.t);
    p.G.resize(samples);
    for (std::size_t i = 0; i < samples; ++i) p.G[i] = p.mu * (1.0 + eps * std::sin(p.phi[i]));
    return p;
}

CircleOracle circle_oracle(int n, double A, double B, std::size_t samples) {
    if (n < 1) throw LabError(ErrorKind::invalid_input, "n must be positive");
    const double r = 1.0 / std::sqrt(static_cast<double>(n));
    if (A * A + B * B >= r * r) throw LabError(ErrorKind::not_star_shaped, "origin lies outside the circle");
    // t(alpha) = r^2 alpha + r A sin(alpha) - r B (cos(alpha) - 1), alpha in [0, 2 pi n]
    auto t_of = [&](double al) { return r * r * al + r * A * std::sin(al) - r * B * (std::cos(al) - 1.0); };
    auto w_of = [&](double al) { return r * r + r * A * std::cos(al) + r * B * std::sin(al); };
    std::vector<PlanarSample> pts(samples + 1);
    std::vector<Vec2> d1(samples), d2(samples);
    std::vector<double> G(samples), alpha(samples);
    double al = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(samples);
        for (int it = 0; it < 60; ++it) {
            const double step = (t_of(al) - t) / w_of(al);
            al -= step;
            if (std::abs(step) < 1e-16) break;
        }
        const double w = w_of(al);
        const double ws = -r * A * std::sin(al) + r * B * std::cos(al);
        const Vec2 g(A + r * std::cos(al), B + r * std::sin(al));
        const Vec2 ga(-r * std::sin(al), r * std::cos(al));
        const Vec2 gaa(-r * std::cos(al), -r * std::sin(al));
        pts[i] = {t, g.x(), g.y()};
        d1[i] = ga / w;
        d2[i] = gaa / (w * w) - ga * ws / (w * w * w);
        alpha[i] = al;
        G[i] = std::pow(static_cast<double>(n), -2.0 / 3.0) *
               (1.0 + std::sqrt(static_cast<double>(n)) * (A * std::cos(al) + B * std::sin(al)));
    }
    pts[samples] = {kTwoPi, pts[0].x, pts[0].y};
    return {CentroaffineCurve(std::move(pts), kTwoPi, std::make_pair(std::move(d1), std::move(d2))), std::move(G),
            std::move(alpha)};
}

ConicNormalization normalize_ellipse(const std::vector<Vec2>& points) {
    // scale for conditioning
    Vec2 mean = Vec2::Zero();
    for (const auto& p : points) mean += p;
    mean /= static_cast<double>(points.size());
    double spread = 0.0;
    for (const auto& p : points) spread = std::max(spread, (p - mean).norm());
    if (!(spread > 0.0)) throw LabError(ErrorKind::invalid_input, "points are coincident");
    Eigen::MatrixXd D(static_cast<Eigen::Index>(points.size()), 6);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Vec2 q = (points[i] - mean) / spread;
        D.row(static_cast<Eigen::Index>(i)) << q.x() * q.x(), q.x() * q.y(), q.y() * q.y(), q.x(), q.y(), 1.0;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(D, Eigen::ComputeThinV);
    const Eigen::VectorXd v = svd.matrixV().col(5);
    Eigen::Matrix2d K;
    K << v(0), 0.5 * v(1), 0.5 * v(1), v(2);
    const Vec2 lin(v(3), v(4));
    const Vec2 c = -0.5 * K.inverse() * lin;
    const double fc = c.dot(K * c) + lin.dot(c) + v(5);
    Eigen::Matrix2d Kn = K / (-fc);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(Kn);
    if (!(es.eigenvalues()(0) > 0.0)) throw LabError(ErrorKind::invalid_input, "best-fit conic is not an ellipse");
    Eigen::Matrix2d root = es.operatorSqrt();
    root /= std::sqrt(root.determinant());
    ConicNormalization out;
    out.S = root;
    out.center = mean + spread * c;
    return out;
}

CircleFit fit_circle(const std::vector<Vec2>& points) {
    const auto n = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd A(n, 3);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& p = points[static_cast<std::size_t>(i)];
        A.row(i) << 2.0 * p.x(), 2.0 * p.y(), 1.0;
        rhs(i) = p.squaredNorm();
    }
    const Eigen::Vector3d s = A.colPivHouseholderQr().solve(rhs);
    CircleFit fit;
    fit.center = Vec2(s(0), s(1));
    fit.radius = std::sqrt(s(2) + fit.center.squaredNorm());
    // one Gauss-Newton step on r_i = |p_i - c| - R
    Eigen::MatrixXd J(n, 3);
    Eigen::VectorXd r(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Vec2 d = points[static_cast<std::size_t>(i)] - fit.center;
        const double len = d.norm();
        r(i) = len - fit.radius;
        J.row(i) << -d.x() / len, -d.y() / len, -1.0;
    }
    const Eigen::Vector3d step = J.colPivHouseholderQr().solve(-r);
    fit.center += Vec2(step(0), step(1));
    fit.radius += step(2);
    for (const auto& p : points) fit.deviation = std::max(fit.deviation, std::abs((p - fit.center).norm() - fit.radius));
    return fit;
}

ThirdRigidity rigidity_check_third(std::span<const double> G, double period, double residual_tol) {
    const std::size_t N = G.size();
    if (N < 16) throw LabError(ErrorKind::invalid_input, "too few samples");
    for (double g : G)
        if (!(g > 0.0)) throw LabError(ErrorKind::domain, "G must be positive");
    ThirdRigidity out;
    const auto dG = spectral_derivative(G, period, 1);
    // (G G')^2 - 2G = (c/2) G^2 + d/4
    Eigen::MatrixXd A(static_cast<Eigen::Index>(N), 2);
    Eigen::VectorXd y(static_cast<Eigen::Index>(N));
    for (std::size_t i = 0; i < N; ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        A(k, 0) = G[i] * G[i];
        A(k, 1) = 1.0;
        y(k) = std::pow(G[i] * dG[i], 2) - 2.0 * G[i];
    }
    const Eigen::Vector2d coef = A.colPivHouseholderQr().solve(y);
    out.c = 2.0 * coef(0);
    out.d = 4.0 * coef(1);
    out.residual = (A * coef - y).cwiseAbs().maxCoeff();
    if (out.residual > residual_tol)
        throw LabError(ErrorKind::not_critical, "profile does not satisfy the first integral", out.residual);

    const auto [mn, mx] = std::minmax_element(G.begin(), G.end());
    out.mu = 0.5 * (*mx + *mn);
    out.eps = (*mx - *mn) / (*mx + *mn);
    out.n = static_cast<int>(std::lround(std::pow(out.mu, -1.5)));
    if (out.eps > 0.0) {
        const double s0 = std::clamp((G[0] / out.mu - 1.0) / out.eps, -1.0, 1.0);
        const double c0 = std::copysign(std::sqrt(1.0 - s0 * s0), dG[0]);
        const double phi0 = std::atan2(s0, c0);
        out.C = phi0 - out.eps * std::cos(phi0);
    }

    std::vector<double> p(N);
    for (std::size_t i = 0; i < N; ++i) p[i] = std::pow(G[i], -3.0);
    const TrigInterpolant ip(p, period);
    ProfileFn pf = [ip](double t) {
        const auto j = ip.eval(t);
        return ProfileJet{j.value, j.d1, j.d2};
    };
    const double x0 = std::pow(p[0], -0.25);
    const Vec2 g0(x0, 0.0), g1(0.0, 1.0 / x0);
    const auto flow = integrate_hill(pf, period, g0, g1);
    const auto end = flow.dense(period);
    out.closure_defect = std::hypot(end[0] - g0.x(), end[1] - g0.y()) + std::hypot(end[2] - g1.x(), end[3] - g1.y());
    out.points.resize(N);
    double angle = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double t = period * static_cast<double>(i) / static_cast<double>(N);
        const auto yv = i == 0 ? OdeState<4>{g0.x(), g0.y(), g1.x(), g1.y()} : flow.dense(t);
        out.points[i] = Vec2(yv[0], yv[1]);
        if (i > 0) angle += std::atan2(bracket(out.points[i - 1], out.points[i]), out.points[i - 1].dot(out.points[i]));
    }
    angle += std::atan2(bracket(out.points.back(), out.points.front()), out.points.back().dot(out.points.front()));
    out.winding = static_cast<int>(std::lround(angle / kTwoPi));

    const auto norm = normalize_ellipse(out.points);
    std::vector<Vec2> mapped(N);
    for (std::size_t i = 0; i < N; ++i) mapped[i] = norm.S * out.points[i];
    const auto fit = fit_circle(mapped);
    out.normalizer = norm.S;
    out.center = norm.S.inverse() * fit.center;
    out.radius = fit.radius;
    out.deviation = fit.deviation;
    out.conic = out.deviation < 1e-5 && out.closure_defect < 1e-6;
    return out;
}

double isoperimetric_ratio(const std::vector<Vec2>& points, double period) {
    const auto m = affine_measures(points, period);
    if (!(m.area > 0.0)) throw LabError(ErrorKind::wrong_orientation, "curve must be positively oriented");
    const double floor = -1e-8 * std::pow(m.length / period, 3.0);
    if (m.min_convexity < floor) throw LabError(ErrorKind::convexity_violation, "curve is not convex", m.min_convexity);
    return std::pow(m.length, 3) / (8.0 * std::numbers::pi * std::numbers::pi * m.area);
}

std::vector<Vec2> ellipse_points(double a, double b, double rotation, Vec2 center, std::size_t samples) {
    std::vector<Vec2> out(samples);
    const double cr = std::cos(rotation), sr = std::sin(rotation);
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(samples);
        const double x = a * std::cos(t), y = b * std::sin(t);
        out[i] = center + Vec2(cr * x - sr * y, sr * x + cr * y);
    }
    return out;
}

std::vector<Vec2> support_curve(double h0, const std::vector<double>& a, const std::vector<double>& b,
                                std::size_t samples) {
    std::vector<Vec2> out(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double th = kTwoPi * static_cast<double>(i) / static_cast<double>(samples);
        double h = h0, dh = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) {
            const double kk = static_cast<double>(k + 2);
            h += a[k] * std::cos(kk * th) + b[k] * std::sin(kk * th);
            dh += kk * (-a[k] * std::sin(kk * th) + b[k] * std::cos(kk * th));
        }
        const Vec2 nrm(std::cos(th), std::sin(th)), tan(-std::sin(th), std::cos(th));
        out[i] = h * nrm + dh * tan;
    }
    return out;
}

std::vector<Vec2> quartic_points(std::size_t samples) {
    std::vector<Vec2> out(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double th = kTwoPi * static_cast<double>(i) / static_cast<double>(samples);
        const double c = std::cos(th), s = std::sin(th);
        const double r = std::pow(c * c * c * c + s * s * s * s, -0.25);
        out[i] = Vec2(r * c, r * s);
    }
    return out;
}

}  // namespace centrolab
