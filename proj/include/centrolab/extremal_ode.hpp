#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "centrolab/ode.hpp"

namespace centrolab {

struct ExponentData {
    double a = 0.0;
    double b = 0.0;            // 1/(a-1)
    bool constants_only = false;  // a = 1/2: F''' = 0
    std::string note;
};

/// Throws ErrorKind::conic_degenerate for a = 1 and invalid_input for a = 0.
ExponentData exponent_data(double a);

struct PhasePoint {
    double Q = 1.0;
    double P = 0.0;
};

/// V(Q) = 2/(b+1) Q^{b+2} - c Q.
double potential(double Q, double b, double c);
double hamiltonian(PhasePoint x, double b, double c);
std::pair<double, double> hamiltonian_vector_field(PhasePoint x, double b, double c);

struct CriticalPoint {
    PhasePoint point;
    bool is_minimum = false;
};
std::optional<CriticalPoint> critical_point(double b, double c);

struct FlowSample {
    double t, Q, P;
};

struct Trajectory {
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;  // (F')^2 + 4/(b+1) F^{b+2} - 2cF, fixed at t = 0
    std::vector<FlowSample> points;
    double energy_drift = 0.0;
    std::optional<double> positivity_lost_at;
    DenseSolution<2> dense;
};

inline constexpr double kProfileFloor = 1e-12;

/// Default step control for the profile flow.
inline OdeOptions flow_options() {
    OdeOptions o;
    o.rtol = 1e-12;
    o.atol = 1e-14;
    return o;
}

/// Adaptive integration of the Hamiltonian flow, reporting `samples`+1
/// uniformly spaced points including both ends.
Trajectory integrate_flow(PhasePoint start, double b, double c, double duration, std::size_t samples = 1024,
                          OdeOptions options = flow_options());

/// sup |F''' + 2(2+b) F^b F'| for uniform periodic samples (n distinct points).
double residual_third_order(std::span<const double> F, double period, double a);

/// sup |(F')^2 + 4/(b+1) F^{b+2} - 2cF - d| along a trajectory.
double first_order_residual(const Trajectory& traj);

}  // namespace centrolab
