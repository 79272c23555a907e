#include "centrolab/exponent_symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "centrolab/error.hpp"
#include "centrolab/ode.hpp"

namespace centrolab {

namespace {

constexpr std::array<std::array<int, 3>, 6> kPerm{{{0, 1, 2}, {0, 2, 1}, {2, 1, 0}, {2, 0, 1}, {1, 2, 0}, {1, 0, 2}}};

void check_branch(int branch) {
    if (branch < 0 || branch >= kBranchCount) throw LabError(ErrorKind::invalid_input, "branch index out of range");
}

template <class T>
BranchParams<T> params(int branch, T q) {
    check_branch(branch);
    const T one(1), two(2), zero(0);
    auto need = [&](bool ok) {
        if (!ok) throw LabError(ErrorKind::branch_unavailable, "branch undefined at this exponent");
    };
    BranchParams<T> p{one, zero, q};
    switch (branch) {
        case 0: break;
        case 1:
            p.mu = -one;
            p.lambda = T(3) / two;
            p.qbar = one - q;
            break;
        case 2:
            need(q != one);
            p.mu = one / (one - q);
            p.lambda = (one - p.mu) / two;
            p.qbar = q / (q - one);
            break;
        case 3:
            need(q != one);
            p.mu = one / (q - one);
            p.lambda = (two - p.mu) / two;
            p.qbar = one / (one - q);
            break;
        case 4:
            need(q != zero);
            p.mu = -one / q;
            p.lambda = (one - two * p.mu) / two;
            p.qbar = (q - one) / q;
            break;
        case 5:
            need(q != zero);
            p.mu = one / q;
            p.lambda = one - p.mu;
            p.qbar = one / q;
            break;
    }
    return p;
}

template <class Eq, class T>
Eq apply(int branch, const Eq& eq) {
    const auto p = params<T>(branch, eq.q);
    const auto& perm = kPerm[static_cast<std::size_t>(branch)];
    const std::array<T, 3> old{eq.u, eq.v, eq.w};
    const T m2 = p.mu * p.mu;
    Eq out;
    out.u = old[static_cast<std::size_t>(perm[0])] / m2;
    out.v = old[static_cast<std::size_t>(perm[1])] / m2;
    out.w = old[static_cast<std::size_t>(perm[2])] / m2;
    out.q = p.qbar;
    return out;
}

ExtendedRational mobius(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, const ExtendedRational& x) {
    if (x.infinite) return c == 0 ? ExtendedRational::inf() : ExtendedRational::of(Rational(a, c));
    const Rational num = Rational(a) * x.value + Rational(b);
    const Rational den = Rational(c) * x.value + Rational(d);
    if (den == Rational(0)) return ExtendedRational::inf();
    return ExtendedRational::of(num / den);
}

double mobius(double a, double b, double c, double d, double x) {
    const double inf = std::numeric_limits<double>::infinity();
    if (std::isinf(x)) return c == 0.0 ? inf : a / c;
    const double den = c * x + d;
    if (den == 0.0) return inf;
    return (a * x + b) / den;
}

constexpr std::array<std::array<std::int64_t, 4>, 6> kOrbitMaps{
    {{1, 0, 0, 1}, {0, 1, 1, 0}, {-1, 1, 0, 1}, {0, 1, -1, 1}, {1, 0, 1, -1}, {1, -1, 1, 0}}};

}  // namespace

std::array<int, 3> branch_permutation(int branch) {
    check_branch(branch);
    return kPerm[static_cast<std::size_t>(branch)];
}

BranchParams<Rational> branch_params(int branch, Rational q) { return params<Rational>(branch, q); }
BranchParams<double> branch_params(int branch, double q) { return params<double>(branch, q); }

ExactThreeTerm apply_branch(int branch, const ExactThreeTerm& eq) { return apply<ExactThreeTerm, Rational>(branch, eq); }
ThreeTermEquation apply_branch(int branch, const ThreeTermEquation& eq) {
    return apply<ThreeTermEquation, double>(branch, eq);
}

std::optional<int> compose_branches(int i, int j, Rational q) {
    const auto pi = branch_params(i, q);
    const auto pj = branch_params(j, pi.qbar);
    const Rational mu = pi.mu * pj.mu;
    const Rational lambda = pj.lambda + pj.mu * pi.lambda;
    const auto& a = kPerm[static_cast<std::size_t>(i)];
    const auto& b = kPerm[static_cast<std::size_t>(j)];
    std::array<int, 3> perm{a[static_cast<std::size_t>(b[0])], a[static_cast<std::size_t>(b[1])],
                            a[static_cast<std::size_t>(b[2])]};
    for (int k = 0; k < kBranchCount; ++k) {
        BranchParams<Rational> pk{};
        try {
            pk = branch_params(k, q);
        } catch (const LabError&) {
            continue;
        }
        if (pk.mu == mu && pk.lambda == lambda && pk.qbar == pj.qbar && kPerm[static_cast<std::size_t>(k)] == perm)
            return k;
    }
    return std::nullopt;
}

std::array<std::array<int, 6>, 6> branch_table(Rational q) {
    std::array<std::array<int, 6>, 6> t{};
    for (int i = 0; i < kBranchCount; ++i)
        for (int j = 0; j < kBranchCount; ++j) {
            const auto k = compose_branches(i, j, q);
            if (!k) throw LabError(ErrorKind::branch_unavailable, "composition leaves the branch set");
            t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = *k;
        }
    return t;
}

std::vector<ExtendedRational> orbit_of_q(ExtendedRational q) {
    std::vector<ExtendedRational> out;
    for (const auto& m : kOrbitMaps) {
        const auto x = mobius(m[0], m[1], m[2], m[3], q);
        if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

ExtendedRational q_from_a(ExtendedRational a) { return mobius(2, -1, 1, -1, a); }
ExtendedRational a_from_q(ExtendedRational q) { return mobius(1, -1, 1, -2, q); }

std::vector<ExtendedRational> orbit_of_a(ExtendedRational a) {
    std::vector<ExtendedRational> out;
    for (const auto& q : orbit_of_q(q_from_a(a))) {
        const auto x = a_from_q(q);
        if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {
std::vector<double> merge_sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v) {
        if (!out.empty() && (x == out.back() || std::abs(x - out.back()) <= 1e-12 * std::max(1.0, std::abs(x))))
            continue;
        out.push_back(x);
    }
    return out;
}
}  // namespace

std::vector<double> orbit_of_q(double q) {
    std::vector<double> v;
    for (const auto& m : kOrbitMaps)
        v.push_back(mobius(static_cast<double>(m[0]), static_cast<double>(m[1]), static_cast<double>(m[2]),
                           static_cast<double>(m[3]), q));
    return merge_sorted(v);
}

std::vector<double> orbit_of_a(double a) {
    std::vector<double> v;
    for (double q : orbit_of_q(mobius(2.0, -1.0, 1.0, -1.0, a))) v.push_back(mobius(1.0, -1.0, 1.0, -2.0, q));
    return merge_sorted(v);
}

ThreeTermSolution solve_three_term(const ThreeTermEquation& eq, double F0, double duration, std::size_t samples,
                                   double sign) {
    if (!(F0 > 0.0)) throw LabError(ErrorKind::domain, "F0 must be positive");
    const double rhs0 = eq.u * std::pow(F0, eq.q) + eq.v * F0 + eq.w;
    if (rhs0 < 0.0) throw LabError(ErrorKind::domain, "initial value outside the admissible region");
    auto f = [&](double, const OdeState<2>& y) {
        return OdeState<2>{y[1], 0.5 * (eq.q * eq.u * std::pow(y[0], eq.q - 1.0) + eq.v)};
    };
    OdeOptions opt;
    opt.rtol = 1e-12;
    opt.atol = 1e-14;
    opt.keep_dense = true;
    const auto res = dopri5<2>(f, 0.0, {F0, std::copysign(std::sqrt(rhs0), sign)}, duration, opt,
                               [](const OdeState<2>& y) { return y[0] > 0.0; });
    if (!res.ok) throw LabError(ErrorKind::integration_failure, "three-term solution left F > 0", res.t);
    ThreeTermSolution sol;
    for (std::size_t i = 0; i <= samples; ++i) {
        const double t = duration * static_cast<double>(i) / static_cast<double>(samples);
        const auto y = i == 0 ? OdeState<2>{F0, std::copysign(std::sqrt(rhs0), sign)} : res.dense(t);
        sol.t.push_back(t);
        sol.F.push_back(y[0]);
        sol.dF.push_back(y[1]);
    }
    return sol;
}

double three_term_residual(const ThreeTermEquation& eq, const ThreeTermSolution& sol) {
    double worst = 0.0;
    for (std::size_t i = 0; i < sol.F.size(); ++i) {
        const double F = sol.F[i];
        worst = std::max(worst, std::abs(sol.dF[i] * sol.dF[i] - (eq.u * std::pow(F, eq.q) + eq.v * F + eq.w)));
    }
    return worst;
}

TransportedSolution transform_solution(const ThreeTermEquation& eq, int branch, const ThreeTermSolution& sol) {
    const auto p = branch_params(branch, eq.q);
    TransportedSolution out;
    out.eq = apply_branch(branch, eq);
    const std::size_t n = sol.F.size();
    if (sol.t.size() != n || sol.dF.size() != n || n < 2) throw LabError(ErrorKind::invalid_input, "bad solution grid");
    std::vector<double> G(n), Gt(n), g(n), gt(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(sol.F[i] > 0.0)) throw LabError(ErrorKind::domain, "F must be positive", sol.t[i]);
        G[i] = std::pow(sol.F[i], 1.0 / p.mu);
        Gt[i] = G[i] / (p.mu * sol.F[i]) * sol.dF[i];
        g[i] = std::pow(G[i], p.lambda);
        gt[i] = p.lambda * g[i] / G[i] * Gt[i];
    }
    out.sol.t.resize(n);
    out.sol.F = G;
    out.sol.dF.resize(n);
    out.sol.t[0] = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = sol.t[i + 1] - sol.t[i];
        // trapezoid with the end-derivative correction
        const double step = 0.5 * h * (g[i] + g[i + 1]) + h * h / 12.0 * (gt[i] - gt[i + 1]);
        if (!(step > 0.0)) throw LabError(ErrorKind::domain, "time change is not monotone", sol.t[i]);
        out.sol.t[i + 1] = out.sol.t[i] + step;
    }
    for (std::size_t i = 0; i < n; ++i) out.sol.dF[i] = Gt[i] / g[i];
    return out;
}

}  // namespace centrolab
