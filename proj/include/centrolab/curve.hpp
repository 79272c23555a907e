#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace centrolab {

using Vec2 = Eigen::Vector2d;

/// Area form u_x v_y - u_y v_x.
inline double bracket(const Vec2& u, const Vec2& v) { return u.x() * v.y() - u.y() * v.x(); }

struct PlanarSample {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
};

enum class Differentiation { finite_difference, spectral };

struct CurveTolerances {
    double norm = 1e-7;     // |[g,g'] - 1|
    double closure = 1e-7;  // |g(T) - g(0)| relative to curve size
    double spacing = 1e-9;  // relative deviation from a uniform grid
};

/// Closed plane curve in its centroaffine parameterization, sampled on a
/// uniform grid of n+1 points whose last point repeats the first.
class CentroaffineCurve {
public:
    CentroaffineCurve(std::vector<PlanarSample> samples, double period,
                      std::optional<std::pair<std::vector<Vec2>, std::vector<Vec2>>> derivatives = std::nullopt,
                      Differentiation method = Differentiation::finite_difference, CurveTolerances tol = {});

    double period() const { return period_; }
    /// Number of distinct grid points (samples().size() - 1).
    std::size_t size() const { return points_.size(); }
    const std::vector<PlanarSample>& samples() const { return samples_; }
    const std::vector<Vec2>& points() const { return points_; }
    const std::vector<Vec2>& first_derivative() const { return d1_; }
    const std::vector<Vec2>& second_derivative() const { return d2_; }
    bool has_stored_derivatives() const { return stored_; }
    Differentiation method() const { return method_; }

    /// max |[g, g'] - 1| over the grid.
    double normalization_defect() const;

    /// Image under a linear map with unit determinant.
    CentroaffineCurve transformed(const Eigen::Matrix2d& s) const;

private:
    std::vector<PlanarSample> samples_;
    std::vector<Vec2> points_, d1_, d2_;
    double period_;
    bool stored_ = false;
    Differentiation method_;
};

struct CurvatureProfile {
    std::vector<double> values;  // n distinct grid values
    double period = 0.0;
};

double functional_A(const CentroaffineCurve& curve);
double functional_B(const CentroaffineCurve& curve, double a);
CurvatureProfile estimate_curvature(const CentroaffineCurve& curve);

/// Curve with an arbitrary regular parameter s in [0, length): returns the
/// point and its first two derivatives.
struct CurveJet {
    Vec2 g, gs, gss;
};
using ParametricCurve = std::function<CurveJet(double)>;

/// Resample a smooth closed star-shaped curve so that [g, g'] = 1.
CentroaffineCurve reparameterize_centroaffine(const ParametricCurve& curve, double length, std::size_t samples,
                                              Differentiation method = Differentiation::finite_difference);

/// Same, from a closed polyline (last point may repeat the first). The
/// polyline is read as samples of a periodic curve and interpolated
/// trigonometrically.
CentroaffineCurve reparameterize_centroaffine(const std::vector<Vec2>& polyline, std::size_t samples,
                                              Differentiation method = Differentiation::finite_difference);

/// n-fold circle of radius n^{-1/2}, period 2 pi.
CentroaffineCurve multiple_circle(int n, std::size_t samples = 2048);

/// Signed area and equiaffine length of a closed curve sampled uniformly in
/// any regular parameter (n distinct points). Derivatives are spectral.
struct AffineMeasures {
    double area = 0.0;
    double length = 0.0;
    double min_convexity = 0.0;
};
AffineMeasures affine_measures(const std::vector<Vec2>& points, double period);

}  // namespace centrolab
