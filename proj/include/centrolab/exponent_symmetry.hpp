#pragma once

#include <array>
#include <optional>
#include <vector>

#include "centrolab/rational.hpp"

namespace centrolab {

// Three-term equation (dF/dt)^2 = u F^q + v F + w. The substitution F = G^mu,
// d tau/dt = G^lambda gives (dG/dtau)^2 = (u G^{e_u} + v G^{e_v} + w G^{e_w}) / mu^2 with
//   e_u = mu (q - 2) + 2 - 2 lambda,  e_v = 2 - 2 lambda - mu,  e_w = 2 - 2 lambda - 2 mu.
// Each branch below picks (mu, lambda) so that {e_u, e_v, e_w} = {qbar, 1, 0}:
//   0 identity          mu = 1,          lambda = 0            qbar = q
//   1                   mu = -1,         lambda = 3/2          qbar = 1 - q
//   2                   mu = 1/(1-q),    lambda = (1 - mu)/2   qbar = q/(q-1)
//   3                   mu = 1/(q-1),    lambda = (2 - mu)/2   qbar = 1/(1-q)
//   4                   mu = -1/q,       lambda = (1 - 2mu)/2  qbar = (q-1)/q
//   5                   mu = 1/q,        lambda = 1 - mu       qbar = 1/q
// The new coefficients are a permutation of (u, v, w) divided by mu^2.

struct ThreeTermEquation {
    double u = 0.0, v = 0.0, w = 0.0, q = 0.0;
};

struct ExactThreeTerm {
    Rational u{0}, v{0}, w{0}, q{0};
};

inline constexpr int kBranchCount = 6;

/// Slot permutation: new coefficient i (of G^qbar, G, 1) is old coefficient perm[i].
std::array<int, 3> branch_permutation(int branch);

template <class T>
struct BranchParams {
    T mu;
    T lambda;
    T qbar;
};

/// Throws branch_unavailable when the exponent formulas divide by zero.
BranchParams<Rational> branch_params(int branch, Rational q);
BranchParams<double> branch_params(int branch, double q);

ExactThreeTerm apply_branch(int branch, const ExactThreeTerm& eq);
ThreeTermEquation apply_branch(int branch, const ThreeTermEquation& eq);

/// Branch k with branch_i followed by branch_j equal to branch_k, checked on
/// (mu, lambda) and on the coefficient permutation at the exponent q.
std::optional<int> compose_branches(int i, int j, Rational q);

/// Multiplication table of the six branches at q (entry [i][j] = i then j).
std::array<std::array<int, 6>, 6> branch_table(Rational q);

std::vector<ExtendedRational> orbit_of_q(ExtendedRational q);
std::vector<ExtendedRational> orbit_of_a(ExtendedRational a);
std::vector<double> orbit_of_q(double q);
std::vector<double> orbit_of_a(double a);

ExtendedRational q_from_a(ExtendedRational a);
ExtendedRational a_from_q(ExtendedRational q);

/// Sampled solution: t grid, F and dF/dt.
struct ThreeTermSolution {
    std::vector<double> t;
    std::vector<double> F;
    std::vector<double> dF;
};

/// Integrates F'' = (q u F^{q-1} + v)/2 with F'(0) = sign * sqrt(u F0^q + v F0 + w).
ThreeTermSolution solve_three_term(const ThreeTermEquation& eq, double F0, double duration, std::size_t samples,
                                   double sign = 1.0);

double three_term_residual(const ThreeTermEquation& eq, const ThreeTermSolution& sol);

struct TransportedSolution {
    ThreeTermEquation eq;
    ThreeTermSolution sol;  // t holds tau
};

TransportedSolution transform_solution(const ThreeTermEquation& eq, int branch, const ThreeTermSolution& sol);

}  // namespace centrolab
