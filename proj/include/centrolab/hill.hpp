#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "centrolab/curve.hpp"
#include "centrolab/ode.hpp"
#include "centrolab/periodic_search.hpp"
#include "centrolab/rational.hpp"

namespace centrolab {

struct ProfileJet {
    double p, dp, ddp;
};
using ProfileFn = std::function<ProfileJet(double)>;

/// p = F^b with its first two derivatives, from the orbit interpolant.
ProfileFn profile_function(const ProfileOrbit& orbit);

enum class MonodromyType { elliptic, parabolic, hyperbolic };
const char* to_string(MonodromyType t);

struct Monodromy {
    Eigen::Matrix2d matrix = Eigen::Matrix2d::Identity();
    double trace = 2.0;
    double determinant = 1.0;
    MonodromyType type = MonodromyType::parabolic;
    std::optional<double> rotation_angle;  // in [0, 2pi), when |trace| <= 2
    double total_rotation = 0.0;           // lifted angle over one period
    double winding_fraction() const;       // total_rotation / 2pi
};

inline OdeOptions hill_options() {
    OdeOptions o;
    o.rtol = 1e-12;
    o.atol = 1e-14;
    return o;
}

Monodromy monodromy(const ProfileFn& p, double period, OdeOptions options = hill_options());
Monodromy monodromy(const ProfileOrbit& orbit, OdeOptions options = hill_options());

struct RotationBox {
    std::optional<double> c;
    double s_lo = 1e-3;
    double s_hi = 0.995;
    std::size_t scan = 40;
    std::size_t samples = 2048;
};

/// Attained winding fractions over the box.
struct RotationRange {
    double lo = 0.0;
    double hi = 0.0;
    double c = 0.0;
};
RotationRange rotation_range(double a, const RotationBox& box = {});

/// Orbit whose monodromy turns by j/q of a full turn per profile period.
ProfileOrbit rotation_tune(double a, Rational target, const RotationBox& box = {});

/// Gauge for the initial data; unset fields take gamma(0) = (p(0)^{-1/4}, 0),
/// gamma'(0) = (0, 1/x0).
struct InitialFrame {
    std::optional<Vec2> g0;
    std::optional<Vec2> g1;
};

struct ClosedExtremalCurve {
    ClosedExtremalCurve(CentroaffineCurve c, ProfileOrbit o) : curve(std::move(c)), orbit(std::move(o)) {}

    CentroaffineCurve curve;
    ProfileOrbit orbit;
    int covering = 1;
    int winding = 0;
    Rational rotation_number{0};
    double scale = 1.0;  // sigma in gamma -> sigma gamma, t -> sigma^2 t
    double closure_defect = 0.0;
    double wronskian_defect = 0.0;
    double residual = 0.0;  // third-order residual of the rescaled profile
    std::vector<double> vertices;
};

ClosedExtremalCurve reconstruct(const ProfileOrbit& orbit, int covering, const InitialFrame& frame = {},
                                std::size_t samples = 0, double tol_close = 1e-6);

/// Solutions of gamma'' = -p gamma over [0, duration] with dense output.
struct HillFlow {
    DenseSolution<4> dense;
    double wronskian_defect = 0.0;
    bool ok = true;
};
HillFlow integrate_hill(const ProfileFn& p, double duration, Vec2 g0, Vec2 g1, OdeOptions options = hill_options());

struct Vertex {
    double t = 0.0;
    double p = 0.0;
    bool is_max = false;
    Eigen::Matrix2d conic = Eigen::Matrix2d::Identity();  // x^T K x = 1
    double semi_major = 0.0;
    double semi_minor = 0.0;
};

struct VertexReport {
    bool constant_profile = false;
    std::vector<Vertex> vertices;
    std::vector<double> distinct_values;
};

VertexReport vertices_and_osculants(const ClosedExtremalCurve& curve);

}  // namespace centrolab
