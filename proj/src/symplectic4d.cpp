#include "centrolab/symplectic4d.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <exception>
#include <numbers>

#include <Eigen/Geometry>

#include "centrolab/error.hpp"
#include "centrolab/roots.hpp"
#include "centrolab/spectral.hpp"

namespace centrolab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
using cd = std::complex<double>;

template <int D>
std::pair<std::vector<Eigen::Matrix<double, D, 1>>, std::vector<Eigen::Matrix<double, D, 1>>> spectral_pair(
    const std::vector<Eigen::Matrix<double, D, 1>>& pts, double period) {
    const std::size_t n = pts.size();
    std::vector<Eigen::Matrix<double, D, 1>> a(n), b(n);
    std::vector<double> col(n);
    for (int k = 0; k < D; ++k) {
        for (std::size_t i = 0; i < n; ++i) col[i] = pts[i](k);
        const auto c1 = spectral_derivative(col, period, 1);
        const auto c2 = spectral_derivative(col, period, 2);
        for (std::size_t i = 0; i < n; ++i) {
            a[i](k) = c1[i];
            b[i](k) = c2[i];
        }
    }
    return {a, b};
}

Vec4 from_complex(cd z1, cd z2) { return Vec4(z1.real(), z1.imag(), z2.real(), z2.imag()); }

// section of the Hopf map away from the south pole
Vec4 section(const Vec3& x) {
    const double z1 = std::sqrt(0.5 * (1.0 + x.z()));
    const cd z2 = cd(x.x(), -x.y()) / (2.0 * z1);
    return from_complex(cd(z1, 0.0), z2);
}

SignKind classify(double lo, double hi, double floor) {
    if (lo > floor) return SignKind::positive;
    if (hi < -floor) return SignKind::negative;
    return SignKind::mixed;
}

char sign_char(SignKind s) { return s == SignKind::positive ? '+' : (s == SignKind::negative ? '-' : '?'); }

}  // namespace

double omega4(const Vec4& u, const Vec4& v) {
    return u(0) * v(1) - u(1) * v(0) + u(2) * v(3) - u(3) * v(2);
}

Vec4 complex_j(const Vec4& u) { return Vec4(-u(1), u(0), -u(3), u(2)); }

Vec3 hopf(const Vec4& z) {
    const cd z1(z(0), z(1)), z2(z(2), z(3));
    const cd w = 2.0 * z1 * std::conj(z2);
    return Vec3(w.real(), w.imag(), std::norm(z1) - std::norm(z2));
}

Curve4D make_curve4d(std::vector<Vec4> points, double period) {
    if (points.size() < 8) throw LabError(ErrorKind::invalid_input, "too few samples");
    Curve4D c;
    auto [a, b] = spectral_pair<4>(points, period);
    c.points = std::move(points);
    c.d1 = std::move(a);
    c.d2 = std::move(b);
    c.period = period;
    return c;
}

Curve4D refine(const Curve4D& c, std::size_t factor) {
    const std::size_t n = c.points.size();
    const std::size_t m = n * factor;
    Curve4D out;
    out.period = c.period;
    out.points.resize(m);
    out.d1.resize(m);
    out.d2.resize(m);
    std::vector<double> col(n);
    for (int k = 0; k < 4; ++k) {
        for (std::size_t i = 0; i < n; ++i) col[i] = c.points[i](k);
        const TrigInterpolant ip(col, c.period);
        for (std::size_t j = 0; j < m; ++j) {
            const auto jet = ip.eval(c.period * static_cast<double>(j) / static_cast<double>(m));
            out.points[j](k) = jet.value;
            out.d1[j](k) = jet.d1;
            out.d2[j](k) = jet.d2;
        }
    }
    return out;
}

Curve4D arclength_reparameterize(const Curve4D& c) {
    const std::size_t n = c.points.size();
    std::vector<double> speed(n);
    for (std::size_t i = 0; i < n; ++i) speed[i] = c.d1[i].norm();
    if (*std::min_element(speed.begin(), speed.end()) <= 0.0)
        throw LabError(ErrorKind::invalid_input, "curve is not immersed");
    const auto anti = periodic_antiderivative(speed, c.period);
    const TrigInterpolant part(anti.periodic, c.period);
    const double length = anti.mean * c.period;
    std::array<TrigInterpolant, 4> coords;
    std::vector<double> col(n);
    for (int k = 0; k < 4; ++k) {
        for (std::size_t i = 0; i < n; ++i) col[i] = c.points[i](k);
        coords[static_cast<std::size_t>(k)] = TrigInterpolant(col, c.period);
    }
    std::vector<Vec4> pts(n);
    double t = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double target = length * static_cast<double>(j) / static_cast<double>(n);
        for (int it = 0; it < 50; ++it) {
            const auto jet = part.eval(t);
            const double s = anti.mean * t + jet.value;
            const double step = (s - target) / (anti.mean + jet.d1);
            t -= step;
            if (std::abs(step) < 1e-15 * std::max(1.0, c.period)) break;
        }
        for (int k = 0; k < 4; ++k) pts[j](k) = coords[static_cast<std::size_t>(k)].eval(t).value;
    }
    return make_curve4d(std::move(pts), length);
}

double closure_gap(const Curve4D& c) {
    // the samples are periodic by construction; measure the interpolated end point
    std::vector<double> col(c.points.size());
    double gap = 0.0;
    for (int k = 0; k < 4; ++k) {
        for (std::size_t i = 0; i < col.size(); ++i) col[i] = c.points[i](k);
        const TrigInterpolant ip(col, c.period);
        gap = std::max(gap, std::abs(ip.eval(c.period).value - c.points.front()(k)));
    }
    return gap;
}

double legendrian_residual(const Curve4D& c) {
    double worst = 0.0;
    for (std::size_t i = 0; i < c.points.size(); ++i) worst = std::max(worst, std::abs(omega4(c.points[i], c.d1[i])));
    return worst;
}

double min_speed(const Curve4D& c) {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& d : c.d1) lo = std::min(lo, d.norm());
    return lo;
}

const char* to_string(SignKind s) {
    switch (s) {
        case SignKind::positive: return "positive";
        case SignKind::negative: return "negative";
        case SignKind::mixed: return "mixed";
    }
    return "?";
}

std::string SignCertificate::pattern() const {
    return std::string("(") + sign_char(sign_star) + "," + sign_char(sign_conv) + ")";
}

namespace {

SignCertificate certify_grid(const Curve4D& c, double floor) {
    double slo = std::numeric_limits<double>::infinity(), shi = -slo, clo = slo, chi = -slo;
    SignCertificate cert;
    cert.floor = floor;
    cert.margin_star = cert.margin_conv = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        const double s = omega4(c.points[i], c.d1[i]);
        const double k = omega4(c.d1[i], c.d2[i]);
        slo = std::min(slo, s);
        shi = std::max(shi, s);
        clo = std::min(clo, k);
        chi = std::max(chi, k);
        cert.margin_star = std::min(cert.margin_star, std::abs(s));
        cert.margin_conv = std::min(cert.margin_conv, std::abs(k));
    }
    cert.sign_star = classify(slo, shi, floor);
    cert.sign_conv = classify(clo, chi, floor);
    return cert;
}

}  // namespace

SignCertificate certify(const Curve4D& c, double floor) {
    auto cert = certify_grid(c, floor);
    const auto fine = certify_grid(refine(c, 4), floor);
    cert.refined_agrees = fine.sign_star == cert.sign_star && fine.sign_conv == cert.sign_conv;
    cert.margin_star = std::min(cert.margin_star, fine.margin_star);
    cert.margin_conv = std::min(cert.margin_conv, fine.margin_conv);
    return cert;
}

SphericalCurve make_spherical(std::vector<Vec3> points, double period) {
    if (points.size() < 8) throw LabError(ErrorKind::invalid_input, "too few samples");
    SphericalCurve c;
    auto [a, b] = spectral_pair<3>(points, period);
    c.points = std::move(points);
    c.d1 = std::move(a);
    c.d2 = std::move(b);
    c.period = period;
    return c;
}

SphericalCurve latitude_circle(double z0, int turns, std::size_t samples) {
    if (!(std::abs(z0) < 1.0)) throw LabError(ErrorKind::invalid_input, "latitude must lie in (-1, 1)");
    const double rho = std::sqrt(1.0 - z0 * z0);
    const double k = turns;
    SphericalCurve c;
    c.period = kTwoPi;
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(samples);
        const double co = std::cos(k * t), si = std::sin(k * t);
        c.points.emplace_back(rho * co, rho * si, z0);
        c.d1.emplace_back(-rho * k * si, rho * k * co, 0.0);
        c.d2.emplace_back(-rho * k * k * co, -rho * k * k * si, 0.0);
    }
    return c;
}

SphericalCurve gnomonic(const std::vector<Eigen::Vector2d>& plane, double period) {
    std::vector<Vec3> pts(plane.size());
    for (std::size_t i = 0; i < plane.size(); ++i) pts[i] = Vec3(plane[i].x(), plane[i].y(), 1.0).normalized();
    return make_spherical(std::move(pts), period);
}

double lift_holonomy(const SphericalCurve& c) {
    std::vector<Vec4> sec(c.points.size());
    for (std::size_t i = 0; i < sec.size(); ++i) {
        if (c.points[i].z() <= -1.0 + 1e-6)
            throw LabError(ErrorKind::domain, "curve passes too close to the south pole");
        sec[i] = section(c.points[i]);
    }
    const auto sc = make_curve4d(std::move(sec), c.period);
    std::vector<double> g(sc.points.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = -omega4(sc.points[i], sc.d1[i]);
    return periodic_trapezoid(g, c.period);
}

double spherical_area(const SphericalCurve& c) { return 2.0 * lift_holonomy(c); }

double min_geodesic_curvature(const SphericalCurve& c) {
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < c.points.size(); ++i) lo = std::min(lo, c.points[i].dot(c.d1[i].cross(c.d2[i])));
    return lo;
}

Curve4D legendrian_lift(const SphericalCurve& c, int area_multiple, bool require_convex, double area_tol) {
    if (require_convex && !(min_geodesic_curvature(c) > 0.0))
        throw LabError(ErrorKind::convexity_violation, "spherical curve has non-positive geodesic curvature");
    const std::size_t n = c.points.size();
    std::vector<Vec4> sec(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (c.points[i].z() <= -1.0 + 1e-6)
            throw LabError(ErrorKind::domain, "curve passes too close to the south pole");
        sec[i] = section(c.points[i]);
    }
    const auto sc = make_curve4d(sec, c.period);
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = -omega4(sc.points[i], sc.d1[i]);
    const auto anti = periodic_antiderivative(g, c.period);
    const double holonomy = anti.mean * c.period;
    const double area = 2.0 * holonomy;
    const double defect = area - 4.0 * std::numbers::pi * area_multiple;
    if (std::abs(defect) > area_tol)
        throw LabError(ErrorKind::non_liftable, "signed area is not the requested multiple of 4 pi", defect);
    std::vector<Vec4> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = c.period * static_cast<double>(i) / static_cast<double>(n);
        const cd phase = std::polar(1.0, anti.mean * t + anti.periodic[i]);
        const cd z1 = phase * cd(sec[i](0), sec[i](1));
        const cd z2 = phase * cd(sec[i](2), sec[i](3));
        pts[i] = from_complex(z1, z2);
    }
    return make_curve4d(std::move(pts), c.period);
}

KinkedCurve add_kinks(double R, int loops, int multiple, std::size_t samples) {
    if (loops < 1 || R <= 0.0) throw LabError(ErrorKind::invalid_input, "need R > 0 and at least one loop");
    const int N = loops + 1;
    auto build = [&](double r) {
        std::vector<Eigen::Vector2d> pl(samples);
        for (std::size_t i = 0; i < samples; ++i) {
            const double s = kTwoPi * static_cast<double>(i) / static_cast<double>(samples);
            pl[i] = Eigen::Vector2d(R * std::cos(s) + r * std::cos(N * s), R * std::sin(s) + r * std::sin(N * s));
        }
        return gnomonic(pl, kTwoPi);
    };
    const double target = 4.0 * std::numbers::pi * multiple;
    auto f = [&](double r) { return spherical_area(build(r)) - target; };
    // loops (and positive curvature) need r > R/N
    double lo = R / N * 1.001;
    double hi = lo;
    for (int i = 0; i < 60 && f(hi) < 0.0; ++i) hi *= 1.5;
    const auto r = bracketed_root(f, lo, hi, 1e-13);
    if (!r) throw LabError(ErrorKind::bracketing, "no loop size reaches the requested area");
    KinkedCurve k{build(*r), *r, multiple};
    return k;
}

InflectionReport detect_inflections(const Curve4D& c, bool legendrian) {
    InflectionReport rep;
    const std::size_t n = c.points.size();
    std::vector<double> k(n);
    double kmax = 0.0, vmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        k[i] = omega4(c.d1[i], c.d2[i]);
        kmax = std::max(kmax, std::abs(k[i]));
        vmax = std::max(vmax, c.d1[i].norm());
    }
    rep.margin = std::abs(*std::min_element(k.begin(), k.end(), [](double a, double b) {
        return std::abs(a) < std::abs(b);
    }));
    const double h = c.period / static_cast<double>(n);
    if (legendrian) {
        std::vector<double> r(n);
        double rmax = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v2 = c.d1[i].squaredNorm();
            const Vec4 gss = c.d2[i] / v2 - c.d1[i] * c.d1[i].dot(c.d2[i]) / (v2 * v2);
            r[i] = (c.points[i] + gss).norm();
            rmax = std::max(rmax, r[i]);
        }
        if (rmax < 1e-8) {
            rep.totally_geodesic = true;
            return rep;
        }
        for (std::size_t i = 0; i < n; ++i) {
            const double a = r[(i + n - 1) % n], b = r[i], d = r[(i + 1) % n];
            if (b <= a && b < d && b < 0.05 * rmax) {
                const double den = a - 2.0 * b + d;
                const double off = den > 0.0 ? 0.5 * (a - d) / den : 0.0;
                rep.geodesic_zeros.push_back(h * (static_cast<double>(i) + off));
            }
        }
    }
    if (kmax < 1e-9 * std::pow(std::max(vmax, 1e-300), 3)) {
        rep.totally_geodesic = legendrian;
        return rep;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double a = k[i], b = k[(i + 1) % n];
        if (a == 0.0) {
            rep.params.push_back(h * static_cast<double>(i));
        } else if (b != 0.0 && std::signbit(a) != std::signbit(b)) {
            rep.params.push_back(h * (static_cast<double>(i) + a / (a - b)));
        }
    }
    return rep;
}

Curve4D push_off(const Curve4D& c, double eps, int direction, double floor) {
    if (direction != 1 && direction != -1) throw LabError(ErrorKind::invalid_input, "direction must be +1 or -1");
    if (eps == 0.0) return c;
    std::vector<Vec4> pts(c.points.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        pts[i] = (c.points[i] + direction * eps * complex_j(c.d1[i])).normalized();
    auto out = make_curve4d(std::move(pts), c.period);
    const auto cert = certify(out, floor);
    const SignKind expected = direction > 0 ? SignKind::negative : SignKind::positive;
    if (cert.sign_star != expected)
        throw LabError(ErrorKind::margin, "push-off sign not certified; try a smaller eps", cert.margin_star);
    return out;
}

Curve4D conjugate(const Curve4D& c) {
    Curve4D out = c;
    auto flip = [](Vec4& v) {
        v(1) = -v(1);
        v(3) = -v(3);
    };
    for (auto& v : out.points) flip(v);
    for (auto& v : out.d1) flip(v);
    for (auto& v : out.d2) flip(v);
    return out;
}

Curve4D legendrian_torus(int p, int q, std::size_t samples) {
    if (p < 1 || q < 1) throw LabError(ErrorKind::invalid_input, "p and q must be positive");
    const double r1 = std::sqrt(static_cast<double>(q) / (p + q));
    const double r2 = std::sqrt(static_cast<double>(p) / (p + q));
    Curve4D c;
    c.period = kTwoPi;
    const cd I(0.0, 1.0);
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(samples);
        const cd z1 = r1 * std::exp(I * (p * t)), z2 = r2 * std::exp(-I * (q * t));
        c.points.push_back(from_complex(z1, z2));
        c.d1.push_back(from_complex(I * double(p) * z1, -I * double(q) * z2));
        c.d2.push_back(from_complex(-double(p * p) * z1, -double(q * q) * z2));
    }
    return c;
}

std::vector<ZooEntry> sign_zoo(double eps, bool parallel) {
    // latitude z = 1/3 bounds a cap of area 4 pi / 3; three turns give 4 pi
    const auto base = arclength_reparameterize(legendrian_lift(latitude_circle(1.0 / 3.0, 3, 1024), 1, true));
    std::vector<ZooEntry> out(4);
    std::vector<std::exception_ptr> errors(4);
    const int dirs[4] = {-1, 1, 1, -1};
    const bool conj[4] = {false, false, true, true};
#pragma omp parallel for schedule(static) if (parallel)
    for (int k = 0; k < 4; ++k) {
        try {
            double e = eps;
            for (int attempt = 0;; ++attempt) {
                try {
                    auto c = push_off(base, e, dirs[k]);
                    if (conj[k]) c = conjugate(c);
                    auto cert = certify(c);
                    if (cert.sign_star == SignKind::mixed || cert.sign_conv == SignKind::mixed || !cert.refined_agrees)
                        throw LabError(ErrorKind::margin, "sign certificate failed");
                    out[static_cast<std::size_t>(k)] = {cert.pattern(), std::move(c), cert};
                    break;
                } catch (const LabError&) {
                    if (attempt >= 3) throw;
                    e *= 0.5;
                }
            }
        } catch (...) {
            errors[static_cast<std::size_t>(k)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace centrolab
