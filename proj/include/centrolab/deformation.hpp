#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "centrolab/curve.hpp"
#include "centrolab/rational.hpp"

namespace centrolab {

// Deformations of the n-fold circle are written on the unit circle traversed
// n times, t in [0, 2 pi n]; harmonic k means the frequency k/n.

struct PeriodicFunction {
    std::string label;
    std::function<double(double)> f;
};

/// Generators of trivial deformations: 1, cos 2t, sin 2t, and the translations
/// cos t, sin t when requested (a = 1/3).
std::vector<PeriodicFunction> trivial_basis(int n, bool include_translations);

/// q = 2 f' + f'''/2 from uniform periodic samples.
std::vector<double> linearized_curvature(std::span<const double> f, double period);

struct SpectrumValue {
    Rational a{0};
    bool trivial = false;  // k = n: translations
};

/// a = (k^2 - 2n^2)/(k^2 - 4n^2); throws ErrorKind::pole at k = 2n.
SpectrumValue spectrum_exponent(int k, int n);

/// Smallest (k, n) with spectrum_exponent(k, n) = a, if any.
struct SpectrumHit {
    int k = 0;
    int n = 0;
};
std::optional<SpectrumHit> spectrum_hit(Rational a);

/// sqrt(2(b+2)) with b = 1/(a-1).
double linearized_frequency(double a);

/// h_k = (k^2-4)((a-1)k^2 - 2(2a-1))/8, for a harmonic written as a rational
/// frequency (k/n for the n-fold circle).
Rational hessian_coefficient(Rational a, Rational k);
double hessian_coefficient(double a, double k);

enum class CircleClass { local_min, local_max, indefinite, degenerate };
const char* to_string(CircleClass c);

struct Classification {
    CircleClass kind = CircleClass::indefinite;
    std::vector<int> kernel;  // harmonics with h_k = 0
};

/// Sign pattern of a h_k over k in {1, 3, 4, ..., K}, exact when a is rational.
Classification classify_circle(Rational a, int K = 64);

struct DeformationReport {
    Rational a{0};
    int n = 1;
    std::vector<int> spectrum_hits;
    std::map<int, Rational> hessian_coeffs;
    Classification classification;
};

DeformationReport deformation_report(Rational a, int n = 1, int K = 64);

/// The a = 1/3 second-variation integral of (4f'^2 - 5f''^2 + f'''^2) over one
/// period of uniform samples.
double second_variation_third(std::span<const double> f, double period = 2.0 * 3.14159265358979323846);

/// Integral of the quadratic form a((2a-1) f'^2 - (4a-3)/4 f''^2 + (a-1)/8 f'''^2),
/// the second-order term of B_a along the variation generated by f on the unit
/// circle.
double second_variation(std::span<const double> f, double a, double period = 2.0 * 3.14159265358979323846);

struct DeformationGenerator {
    double omega = 0.0;   // k/n
    double period = 0.0;  // 2 pi n
    double gain = 0.0;    // 2f' + f'''/2 sends cos(omega t) to gain * sin(omega t)
    bool trivial = false; // k = n: translations
    PeriodicFunction cos_part;
    PeriodicFunction sin_part;
};

/// Throws off_spectrum unless spectrum_exponent(k, n) = a and pole at k = 2n;
/// k = n comes back flagged trivial.
DeformationGenerator deformation_generator(Rational a, int k, int n);

/// The curve gamma + eps v with v = -(f'/2) gamma + f gamma', for the unit circle
/// gamma(t) = (cos t, sin t) and f given with three derivatives.
struct FunctionJet3 {
    std::function<double(double)> f, d1, d2, d3;
};
ParametricCurve deformed_circle(const FunctionJet3& f, double eps);

/// B_a of the deformed circle after centroaffine renormalization and rescaling
/// back to A = 2 pi.
double deformed_circle_functional(const FunctionJet3& f, double eps, double a, std::size_t samples = 2048);

FunctionJet3 harmonic_jet(double k, bool sine = true, double amplitude = 1.0);

}  // namespace centrolab
