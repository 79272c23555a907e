#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace centrolab {

// Coordinates (x1, y1, x2, y2) with z_k = x_k + i y_k; omega = dx1^dy1 + dx2^dy2.
using Vec4 = Eigen::Vector4d;
using Vec3 = Eigen::Vector3d;

double omega4(const Vec4& u, const Vec4& v);
/// Multiplication by i.
Vec4 complex_j(const Vec4& u);
/// Hopf map to the unit sphere, (2 z1 conj(z2), |z1|^2 - |z2|^2).
Vec3 hopf(const Vec4& z);

/// Closed curve in R^4 on a uniform grid of n distinct samples.
struct Curve4D {
    std::vector<Vec4> points, d1, d2;
    double period = 0.0;
};

/// Derivatives by spectral differentiation.
Curve4D make_curve4d(std::vector<Vec4> points, double period);
/// Trigonometric resampling at `factor` times the grid density.
Curve4D refine(const Curve4D& c, std::size_t factor);
/// Constant-speed resampling; the new period is the length.
Curve4D arclength_reparameterize(const Curve4D& c);

double closure_gap(const Curve4D& c);
double legendrian_residual(const Curve4D& c);  // max |omega(g, g')|
double min_speed(const Curve4D& c);

enum class SignKind { positive, negative, mixed };
const char* to_string(SignKind s);

struct SignCertificate {
    SignKind sign_star = SignKind::mixed;  // omega(g, g')
    SignKind sign_conv = SignKind::mixed;  // omega(g', g'')
    double margin_star = 0.0;              // min |.| over the grid
    double margin_conv = 0.0;
    double floor = 0.0;
    bool refined_agrees = false;  // same verdict at 4x density
    std::string pattern() const;  // "(+,-)" etc.
};

SignCertificate certify(const Curve4D& c, double floor = 1e-3);

/// Closed curve on the unit sphere with derivatives.
struct SphericalCurve {
    std::vector<Vec3> points, d1, d2;
    double period = 0.0;
};
SphericalCurve make_spherical(std::vector<Vec3> points, double period);

/// Latitude circle z = z0 traversed `turns` times over [0, 2 pi].
SphericalCurve latitude_circle(double z0, int turns, std::size_t samples = 1024);
/// Central projection of a closed plane curve (x, y) to the sphere via (x, y, 1).
SphericalCurve gnomonic(const std::vector<Eigen::Vector2d>& plane, double period);

/// Signed area to the left of the curve (the side away from the south pole).
double spherical_area(const SphericalCurve& c);
/// Holonomy of the horizontal lift, equal to half the signed area.
double lift_holonomy(const SphericalCurve& c);
/// Minimum geodesic curvature numerator det(x, x', x'') over the grid.
double min_geodesic_curvature(const SphericalCurve& c);

/// Horizontal lift. The signed area must be 4 pi k on the unit sphere
/// (closure of the lift); otherwise throws non_liftable with the defect.
Curve4D legendrian_lift(const SphericalCurve& c, int area_multiple, bool require_convex = false,
                        double area_tol = 1e-8);

/// Circle of plane radius R with N outward loops, loop size tuned by
/// bisection so that the gnomonic image has area 4 pi k.
struct KinkedCurve {
    SphericalCurve curve;
    double loop_radius = 0.0;
    int multiple = 0;
};
KinkedCurve add_kinks(double R, int loops, int multiple, std::size_t samples = 2048);

struct InflectionReport {
    std::vector<double> params;
    bool totally_geodesic = false;
    double margin = 0.0;                 // min |omega(g', g'')|
    std::vector<double> geodesic_zeros;  // zeros of |g + g_ss| in arc length
};
InflectionReport detect_inflections(const Curve4D& c, bool legendrian);

/// Gamma = normalize(g + direction * eps * J g'); throws margin if the
/// transverse sign is not certified.
Curve4D push_off(const Curve4D& c, double eps, int direction, double floor = 1e-3);
Curve4D conjugate(const Curve4D& c);

/// Legendrian torus knot (r1 e^{ipt}, r2 e^{-iqt}) with r1^2 = q/(p+q).
Curve4D legendrian_torus(int p, int q, std::size_t samples = 1024);

struct ZooEntry {
    std::string label;
    Curve4D curve;
    SignCertificate certificate;
};

/// Four curves realizing the sign patterns of (omega(g,g'), omega(g',g'')).
std::vector<ZooEntry> sign_zoo(double eps = 0.02, bool parallel = true);

}  // namespace centrolab
