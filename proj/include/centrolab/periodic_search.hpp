#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "centrolab/extremal_ode.hpp"
#include "centrolab/hermite.hpp"

namespace centrolab {

struct TurningPoints {
    double m = 0.0;
    double M = 0.0;
};

/// Ends of the bounded positive component of {H(Q,0) = E}, if there is one.
std::optional<TurningPoints> turning_points(double b, double c, double E);

/// Half period of the orbit on the level H = E; throws no_orbit.
double half_period(double b, double c, double E);

/// Sampled periodic profile F on a uniform grid of one period; t = 0 sits at
/// the minimum m.
struct ProfileOrbit {
    ExponentData exponent;
    double c = 0.0;
    double d = 0.0;
    double energy = 0.0;
    double m = 0.0;
    double M = 0.0;
    double period = 0.0;
    std::vector<double> F;
    std::vector<double> P;
    double residual = 0.0;
    double closure_defect = 0.0;
    double energy_drift = 0.0;

    bool is_constant() const { return !(M > m); }
    /// Interpolant of F with exact first and second derivatives at the nodes.
    PeriodicQuinticHermite interpolant() const;
};

/// Constant profile p = p0 carried over an arbitrary period.
ProfileOrbit constant_profile(double a, double p0, double period, std::size_t samples = 64);

/// Orbit through (m, 0) on the level H = E.
ProfileOrbit sample_orbit(double a, double c, double E, std::size_t samples = 2048);

/// Default constant for the three existence regimes of b.
double default_constant(double b);

/// Energies of bounded orbits are parameterized by s in (0,1): E = V0 (1 - s),
/// where V0 < 0 is the minimum of the potential. Throws no_orbit if there is no
/// well.
double energy_at(double b, double c, double s);

struct SearchBox {
    std::optional<double> c;
    double s_lo = 1e-3;
    double s_hi = 0.995;
    std::size_t scan = 48;
    std::size_t samples = 2048;
};

/// Period of the orbit at fraction s.
double period_at(double b, double c, double s);

ProfileOrbit find_orbit_with_period(double a, double target_period, const SearchBox& box = {});

struct RigidityGrid {
    double log_c_min = -4.0, log_c_max = 4.0;
    std::size_t c_steps = 33;
    double log_e_min = -4.0, log_e_max = 4.0;
    std::size_t e_steps = 33;
    double log_q_min = -12.0, log_q_max = 12.0;
    std::size_t q_steps = 961;
};

/// Outcome for a single (c, E) cell.
struct CellVerdict {
    int bounded_components = 0;
    bool concave = true;  // V' decreasing on the scanned Q range
};
CellVerdict scan_cell(double b, double c, double E, const RigidityGrid& grid);

struct RigidityVerdict {
    bool rigid = false;
    std::size_t cells = 0;
    std::size_t bounded_cells = 0;
    std::size_t nonconcave_cells = 0;
    std::string message;
};

RigidityVerdict rigidity_scan(double a, const RigidityGrid& grid = {}, bool parallel = true);

}  // namespace centrolab
