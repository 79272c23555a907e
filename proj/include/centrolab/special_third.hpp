#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "centrolab/curve.hpp"

namespace centrolab {

// At a = 1/3 we write F = G^2. The once-integrated equation
// F'' = 2 F^{-1/2} + c has the first integral (F')^2 = 8 F^{1/2} + 2cF + d,
// which in G reads (G G')^2 = (c/2) G^2 + 2 G + d/4; c and d keep their
// meaning from F throughout this module. Non-constant solutions are
// G = mu (1 + eps sin phi) with phi - eps cos phi = n t + C and mu = n^{-2/3},
// for which c = -2 mu^2 n^2 and d = 4 mu^4 n^2 (eps^2 - 1).
// (With x = phi - pi/2 the phase equation becomes x + eps sin x = const, a
// Kepler-type equation; no closed form is used here.)

/// Unique root of phi - eps cos(phi) = n t + C, 0 <= eps < 1.
double solve_phase(double eps, int n, double C, double t);
std::vector<double> solve_phase(double eps, int n, double C, std::span<const double> grid);

struct ThirdCaseProfile {
    double mu = 1.0;
    double eps = 0.0;  // normalized, G = mu (1 + eps sin phi)
    int n = 1;
    double C = 0.0;
    double c = 0.0;
    double d = 0.0;
    double period = 0.0;
    std::vector<double> t;
    std::vector<double> phi;
    std::vector<double> G;
};

ThirdCaseProfile third_profile(double eps, int n, double C, std::size_t samples = 2048);

struct CircleOracle {
    CentroaffineCurve curve;
    std::vector<double> G;      // on the curve grid
    std::vector<double> alpha;  // polar angle about the circle centre
};

/// n-fold circle of radius n^{-1/2} centred at (A, B), centroaffinely
/// parameterized over [0, 2 pi].
CircleOracle circle_oracle(int n, double A, double B, std::size_t samples = 2048);

struct ThirdRigidity {
    bool conic = false;
    double deviation = 0.0;      // geometric, after unimodular normalization
    double residual = 0.0;       // first-integral fit
    double closure_defect = 0.0;
    Vec2 center = Vec2::Zero();  // in the original frame
    double radius = 0.0;         // in the normalized frame
    Eigen::Matrix2d normalizer = Eigen::Matrix2d::Identity();
    double mu = 0.0;
    double eps = 0.0;
    int n = 0;
    int winding = 0;
    double C = 0.0;
    double c = 0.0;
    double d = 0.0;
    std::vector<Vec2> points;
};

/// Checks that a critical profile reconstructs to a conic. Throws
/// not_critical when the first-integral residual exceeds `residual_tol`.
ThirdRigidity rigidity_check_third(std::span<const double> G, double period = 2.0 * 3.14159265358979323846,
                                   double residual_tol = 1e-6);

/// Least-squares conic through points; returns unimodular S and centre c so
/// that S (x - c) lies near a circle.
struct ConicNormalization {
    Eigen::Matrix2d S = Eigen::Matrix2d::Identity();
    Vec2 center = Vec2::Zero();
};
ConicNormalization normalize_ellipse(const std::vector<Vec2>& points);

struct CircleFit {
    Vec2 center = Vec2::Zero();
    double radius = 0.0;
    double deviation = 0.0;
};
/// Kasa fit followed by one Gauss-Newton step on the geometric distance.
CircleFit fit_circle(const std::vector<Vec2>& points);

/// L^3 / (8 pi^2 A) for a convex closed curve sampled uniformly in any
/// regular parameter (n distinct points).
double isoperimetric_ratio(const std::vector<Vec2>& points, double period);

std::vector<Vec2> ellipse_points(double a, double b, double rotation, Vec2 center, std::size_t samples);

/// Curve with support function h(theta) = h0 + sum (a_k cos k theta + b_k sin k theta), k >= 2.
std::vector<Vec2> support_curve(double h0, const std::vector<double>& a, const std::vector<double>& b,
                                std::size_t samples);

/// Boundary of x^4 + y^4 = 1 in the polar parameterization.
std::vector<Vec2> quartic_points(std::size_t samples);

}  // namespace centrolab
